mod common;

use common::*;
use proptest::prelude::*;
use semieuclid::geom::*;
use semieuclid::{ConstructibleReal, MagnitudeClass, SeriesNumber, Sign};

fn int(n: i64) -> SeriesNumber {
    SeriesNumber::from_integer(n, prec())
}

fn eps() -> SeriesNumber {
    SeriesNumber::epsilon(prec())
}

fn pt(x: SeriesNumber, y: SeriesNumber) -> Point {
    Point::new(x, y)
}

fn line(a: SeriesNumber, b: SeriesNumber, c: SeriesNumber) -> Line {
    Line::new(a, b, c).unwrap()
}

fn point_strategy() -> impl Strategy<Value = Point> {
    (limited_strategy(), limited_strategy()).prop_map(|(x, y)| Point::new(x, y))
}

#[test]
fn lines_through_points() {
    let e = eps();
    let l = line_through(&Point::origin(prec()), &pt(int(1), e.clone())).unwrap();
    assert!(l.same_as(&line(-&e, int(1), int(0))).unwrap());
    let v = line_through(&Point::origin(prec()), &pt(int(0), int(1))).unwrap();
    assert!(v.same_as(&Line::vertical(int(0)).unwrap()).unwrap());
    let ca = line_through(&pt(int(-1), -&e), &Point::origin(prec())).unwrap();
    assert!(ca.same_as(&l).unwrap());
    let p = Point::origin(prec());
    assert_eq!(line_through(&p, &p).unwrap_err(), GeomError::CoincidentPoints);
}

#[test]
fn line_intersections() {
    let e = eps();
    let y1 = Line::horizontal(int(1)).unwrap();
    let ye = Line::from_slope(e.clone(), int(0)).unwrap();
    let p = intersect_lines(&ye, &y1).unwrap().unwrap();
    assert!(p.x.agrees_with(&e.inv().unwrap()));
    assert_eq!(p.x.classify().unwrap().class, MagnitudeClass::Infinite);
    assert!(!meets_in_ll(&ye, &y1).unwrap());
    let o = intersect_lines(&Line::vertical(int(0)).unwrap(), &Line::horizontal(int(0)).unwrap()).unwrap().unwrap();
    assert!(o.is_origin().unwrap());
    let yd = Line::from_slope(&e * &e, int(0)).unwrap();
    assert!(intersect_lines(&ye, &yd).unwrap().unwrap().is_origin().unwrap());
    assert!(meets_in_ll(&Line::from_slope(int(1), int(0)).unwrap(), &y1).unwrap());
    let ray = Line::from_slope(&e * &e, e.clone()).unwrap();
    assert!(!meets_in_ll(&ray, &Line::horizontal(int(0)).unwrap()).unwrap());
    assert!(intersect_lines(&y1, &Line::horizontal(int(2)).unwrap()).unwrap().is_none());
    assert_eq!(intersect_lines(&y1, &y1).unwrap_err(), GeomError::CoincidentLines);
}

#[test]
fn bisectors_and_perpendiculars() {
    let e = eps();
    let a = pt(int(-1), -&e);
    let b = pt(int(1), -&e);
    let c = Point::origin(prec());
    assert!(perpendicular_bisector(&a, &b).unwrap().same_as(&Line::vertical(int(0)).unwrap()).unwrap());
    let ac = perpendicular_bisector(&a, &c).unwrap();
    let expected = line(int(2), e.scale(&ConstructibleReal::from_integer(2)), &(&e * &e) + &int(1));
    assert!(ac.same_as(&expected).unwrap());
    assert!(perpendicular_bisector(&c, &Point::from_integers(2, 0, prec())).unwrap().same_as(&Line::vertical(int(1)).unwrap()).unwrap());
    let ye = Line::from_slope(e.clone(), int(0)).unwrap();
    let perp = perpendicular_through(&ye, &c).unwrap();
    assert!(perp.same_as(&line(int(1), e.clone(), int(0))).unwrap());
    let p = perpendicular_through(&Line::horizontal(int(0)).unwrap(), &Point::from_integers(3, 5, prec())).unwrap();
    assert!(p.same_as(&Line::vertical(int(3)).unwrap()).unwrap());
}

#[test]
fn distances() {
    let o = Point::origin(prec());
    assert!(distance(&o, &Point::from_integers(3, 4, prec())).unwrap().agrees_with(&int(5)));
    assert!(distance(&o, &pt(eps(), int(0))).unwrap().agrees_with(&eps()));
    let d = distance(&o, &pt(int(1), eps())).unwrap();
    assert!((&(&d * &d) - &(&int(1) + &(&eps() * &eps()))).vanishes_below(16));
    assert_eq!(d.coefficient(semieuclid::Exponent::from_integer(2)).unwrap().as_rational(), Some(q(1, 2)));
}

#[test]
fn angles() {
    let o = Point::origin(prec());
    let x = Point::from_integers(1, 0, prec());
    let right = angle_at(&o, &x, &Point::from_integers(0, 1, prec())).unwrap();
    assert!(right.same_as(&AngleTurn::right(prec())).unwrap());
    let (c, s) = right.cos_sin().unwrap();
    assert!(c.agrees_with(&int(0)) && s.agrees_with(&int(1)));
    let quarter = angle_at(&o, &x, &Point::from_integers(1, 1, prec())).unwrap();
    let half_root2 = SeriesNumber::constant(sqrt(&cr(2)) * ConstructibleReal::ratio(1, 2), prec());
    let (c, s) = quarter.cos_sin().unwrap();
    assert!(c.agrees_with(&half_root2) && s.agrees_with(&half_root2));
    let tiny = angle_at(&o, &x, &pt(int(1), eps())).unwrap();
    let (c, s) = tiny.cos_sin().unwrap();
    assert!(c.agrees_with(&(&int(1) - &(&eps() * &eps()).scale(&ConstructibleReal::ratio(1, 2))).truncated_at(3.into())));
    assert_eq!(s.valuation().unwrap(), 1.into());
    assert!((&(&c * &c) + &(&s * &s) - int(1)).vanishes());
    assert!(angle_add(&right, &right).is_straight().unwrap());
    assert!(angle_add(&quarter, &AngleTurn::zero(prec())).same_as(&quarter).unwrap());
    assert_eq!(angle_at(&o, &o, &x).unwrap_err(), GeomError::DegenerateRay);
}

#[test]
fn circumcenters() {
    let e = eps();
    let t = Triangle::new(pt(int(-1), -&e), pt(int(1), -&e), Point::origin(prec())).unwrap();
    let c = circumcenter(&t).unwrap();
    let y = -&(&e.inv().unwrap().scale(&ConstructibleReal::ratio(1, 2)) + &e.scale(&ConstructibleReal::ratio(1, 2)));
    assert!(c.agrees_with(&pt(int(0), y)));
    assert!(!point_in_ll(&c).unwrap());
    let t2 = Triangle::new(Point::origin(prec()), Point::from_integers(2, 0, prec()), Point::from_integers(0, 2, prec())).unwrap();
    assert!(circumcenter(&t2).unwrap().agrees_with(&Point::from_integers(1, 1, prec())));
    let t3 = Triangle::new(Point::origin(prec()), Point::from_integers(1, 0, prec()), pt(int(0), e.clone())).unwrap();
    let c3 = circumcenter(&t3).unwrap();
    assert!(c3.agrees_with(&pt(SeriesNumber::ratio(1, 2, prec()), e.scale(&ConstructibleReal::ratio(1, 2)))));
    for v in t3.vertices() {
        assert!((distance(&c3, v).unwrap() - distance(&c3, &t3.a).unwrap()).vanishes());
    }
    let flat = Triangle::new(Point::origin(prec()), Point::from_integers(1, 1, prec()), Point::from_integers(2, 2, prec()));
    assert_eq!(flat.unwrap_err(), GeomError::CollinearVertices);
}

#[test]
fn circle_intersections() {
    let o = Point::origin(prec());
    let unit = Circle::new(o.clone(), int(1)).unwrap();
    let shifted = Circle::new(Point::from_integers(1, 0, prec()), int(1)).unwrap();
    let pts = circle_circle_intersection(&unit, &shifted).unwrap();
    assert_eq!(pts.len(), 2);
    let h = SeriesNumber::constant(sqrt(&cr(3)) * ConstructibleReal::ratio(1, 2), prec());
    for p in &pts {
        assert!(p.x.agrees_with(&SeriesNumber::ratio(1, 2, prec())));
        assert!((&p.y * &p.y).agrees_with(&(&h * &h)));
        assert_eq!(unit.residual(p).sign().unwrap(), Sign::Zero);
        assert_eq!(shifted.residual(p).sign().unwrap(), Sign::Zero);
    }
    let far = Circle::new(Point::from_integers(3, 0, prec()), int(1)).unwrap();
    assert!(circle_circle_intersection(&unit, &far).unwrap().is_empty());
    let touching = Circle::new(Point::from_integers(2, 0, prec()), int(1)).unwrap();
    let t = circle_circle_intersection(&unit, &touching).unwrap();
    assert_eq!(t.len(), 1);
    assert!(t[0].agrees_with(&Point::from_integers(1, 0, prec())));
    assert_eq!(circle_circle_intersection(&unit, &unit).unwrap_err(), GeomError::CoincidentCircles);
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn perpendiculars_are_orthogonal(p in point_strategy(), q in point_strategy(), r in point_strategy()) {
        if let Ok(l) = line_through(&p, &q) {
            let m = perpendicular_through(&l, &r).unwrap();
            prop_assert!(m.contains(&r).unwrap());
            prop_assert_eq!(l.direction().dot(&m.direction()).sign().unwrap(), Sign::Zero);
            let back = perpendicular_through(&m, &p).unwrap();
            prop_assert!(back.same_as(&l).unwrap());
        }
    }

    #[test]
    fn circumcenter_is_equidistant(a in point_strategy(), b in point_strategy(), c in point_strategy()) {
        if let Ok(t) = Triangle::new(a, b, c) {
            let o = circumcenter(&t).unwrap();
            let r = (&o - &t.a).norm2();
            prop_assert!(((&o - &t.b).norm2() - r.clone()).vanishes());
            prop_assert!(((&o - &t.c).norm2() - r).vanishes());
        }
    }

    #[test]
    fn angle_addition_associates(a in point_strategy(), b in point_strategy(), c in point_strategy()) {
        let turn = |p: &Point| AngleTurn::from_vector(p);
        if let (Ok(x), Ok(y), Ok(z)) = (turn(&a), turn(&b), turn(&c)) {
            let l = angle_add(&angle_add(&x, &y), &z);
            let r = angle_add(&x, &angle_add(&y, &z));
            prop_assert!(l.agrees_below(&r, 16));
        }
    }

    #[test]
    fn triangle_angles_sum_to_pi(a in point_strategy(), b in point_strategy(), c in point_strategy()) {
        if let Ok(t) = Triangle::new(a, b, c) {
            prop_assert!(t.angle_sum().unwrap().is_straight_below(16));
        }
    }

    #[test]
    fn distance_is_a_square_root(p in point_strategy(), q in point_strategy()) {
        let d = distance(&p, &q).unwrap();
        prop_assert!((&(&d * &d) - &(&p - &q).norm2()).vanishes());
        prop_assert_ne!(d.sign().unwrap(), Sign::Negative);
        prop_assert_eq!(d.sign().unwrap() == Sign::Zero, p.coincides(&q).unwrap());
    }
}
