use super::*;
use crate::coeff::ConstructibleReal;
use crate::field::{Exponent, Precision};

fn prec() -> Precision {
    Precision::default()
}

fn eps() -> SeriesNumber {
    SeriesNumber::epsilon(prec())
}

fn int(n: i64) -> SeriesNumber {
    SeriesNumber::from_integer(n, prec())
}

fn rat(n: i64, d: i64) -> SeriesNumber {
    SeriesNumber::ratio(n, d, prec())
}

fn pt(x: SeriesNumber, y: SeriesNumber) -> Point {
    Point::new(x, y)
}

#[test]
fn line_through_is_canonical() {
    let l = line_through(&Point::origin(prec()), &pt(int(1), eps())).unwrap();
    // -ε x + y = 0
    assert!(l.b().agrees_with(&int(1)));
    assert!(l.a().agrees_with(&-eps()));
    assert!(l.c().vanishes());
    assert!(l.a().is_exact());
}

#[test]
fn perpendicular_through_origin() {
    let l = Line::new(-eps(), int(1), int(0)).unwrap();
    let p = perpendicular_through(&l, &Point::origin(prec())).unwrap();
    // x + ε y = 0
    assert!(p.a().agrees_with(&int(1)));
    assert!(p.b().agrees_with(&eps()));
    let m = perpendicular_through(&Line::horizontal(int(0)).unwrap(), &Point::from_integers(3, 5, prec())).unwrap();
    assert!(m.same_as(&Line::vertical(int(3)).unwrap()).unwrap());
}

#[test]
fn parallels_and_intersections() {
    let y0 = Line::horizontal(int(0)).unwrap();
    let y1 = Line::horizontal(int(1)).unwrap();
    assert!(intersect_lines(&y0, &y1).unwrap().is_none());
    assert_eq!(intersect_lines(&y0, &y0).unwrap_err(), GeomError::CoincidentLines);
    let steep = Line::from_slope(eps(), int(1)).unwrap();
    let p = intersect_lines(&y0, &steep).unwrap().unwrap();
    // εx + 1 = 0 at x = -1/ε
    assert!(p.x.agrees_with(&-eps().inv().unwrap()));
    assert!(!point_in_ll(&p).unwrap());
    assert!(!meets_in_ll(&y0, &steep).unwrap());
}

#[test]
fn degenerate_inputs() {
    assert_eq!(
        Line::new(int(0), int(0), int(1)).unwrap_err(),
        GeomError::DegenerateLine
    );
    let o = Point::origin(prec());
    assert_eq!(line_through(&o, &o).unwrap_err(), GeomError::CoincidentPoints);
    let t = Triangle::new(o.clone(), Point::from_integers(1, 1, prec()), Point::from_integers(2, 2, prec()));
    assert_eq!(t.unwrap_err(), GeomError::CollinearVertices);
    assert_eq!(angle_at(&o, &o, &Point::from_integers(1, 0, prec())).unwrap_err(), GeomError::DegenerateRay);
}

#[test]
fn circumcenter_of_flat_triangle() {
    let t = Triangle::new(pt(int(-1), int(0)), pt(int(1), int(0)), pt(int(0), eps())).unwrap();
    let c = circumcenter(&t).unwrap();
    assert!(c.x.vanishes());
    let expected = -(eps().inv().unwrap().scale(&ConstructibleReal::ratio(1, 2))) + eps().scale(&ConstructibleReal::ratio(1, 2));
    assert!(c.y.agrees_with(&expected));
    assert!(!point_in_ll(&c).unwrap());
    assert!(c.y.is_exact(), "{}", c.y);
}

#[test]
fn right_triangle_angles() {
    let t = Triangle::new(Point::origin(prec()), Point::from_integers(1, 0, prec()), Point::from_integers(0, 1, prec())).unwrap();
    let [a, _, _] = t.interior_angles().unwrap();
    assert!(a.same_as(&AngleTurn::right(prec())).unwrap());
    assert!(t.angle_sum().unwrap().is_straight().unwrap());
    assert!(t.angle_sum().unwrap().is_straight_below(16));
}

#[test]
fn infinitesimal_triangle_angle_sum() {
    let e = eps();
    let t = Triangle::new(
        Point::origin(prec()),
        pt(e.clone(), int(0)),
        pt(e.clone(), e.powi(2).unwrap()),
    )
    .unwrap();
    let [a, _, _] = t.interior_angles().unwrap();
    assert_eq!(a.sin().unwrap().valuation().unwrap(), Exponent::from_integer(1));
    assert!(t.angle_sum().unwrap().is_straight_below(16));
}

#[test]
fn tracked_agreement_of_scaled_angles() {
    let e = eps();
    let o = Point::origin(prec());
    let big = angle_at(&o, &Point::from_integers(1, 0, prec()), &pt(int(1), e.clone())).unwrap();
    let small = angle_at(&o, &pt(e.clone(), int(0)), &pt(e.clone(), e.powi(2).unwrap())).unwrap();
    assert!(small.agrees_tracked(&big, 8));
    assert!(!small.agrees_tracked(&AngleTurn::right(prec()), 8));
}

#[test]
fn between_and_congruence() {
    let a = Point::from_integers(0, 0, prec());
    let b = pt(rat(1, 2), int(0));
    let c = Point::from_integers(1, 0, prec());
    assert!(is_between(&a, &b, &c).unwrap());
    assert!(!is_between(&a, &c, &b).unwrap());
    assert!(segment_congruent(&a, &b, &b, &c).unwrap());
    assert!(midpoint(&a, &c).agrees_with(&b));
    assert!(distance(&a, &Point::from_integers(3, 4, prec())).unwrap().agrees_with(&int(5)));
}

#[test]
fn line_meets_circle() {
    let c = Circle::new(Point::origin(prec()), int(1)).unwrap();
    let diag = Line::from_integers(1, -1, 0, prec()).unwrap();
    let pts = line_circle_intersection(&diag, &c).unwrap();
    assert_eq!(pts.len(), 2);
    for p in &pts {
        assert!(c.residual(p).vanishes());
        assert!(diag.residual(p).vanishes());
    }
    let tangent = Line::vertical(int(1)).unwrap();
    assert_eq!(line_circle_intersection(&tangent, &c).unwrap().len(), 1);
    let miss = Line::vertical(int(2)).unwrap();
    assert!(line_circle_intersection(&miss, &c).unwrap().is_empty());
    let near = Line::vertical(int(1) - eps()).unwrap();
    assert_eq!(line_circle_intersection(&near, &c).unwrap().len(), 2);
}

#[test]
fn circles_meet() {
    let c1 = Circle::new(Point::origin(prec()), int(1)).unwrap();
    let c2 = Circle::new(Point::from_integers(1, 0, prec()), int(1)).unwrap();
    let pts = circle_circle_intersection(&c1, &c2).unwrap();
    assert_eq!(pts.len(), 2);
    for p in &pts {
        assert!(c1.residual(p).vanishes_below(16));
        assert!(c2.residual(p).vanishes_below(16));
        assert!(p.x.agrees_with(&rat(1, 2)));
    }
    assert_eq!(circle_circle_intersection(&c1, &c1).unwrap_err(), GeomError::CoincidentCircles);
    let tiny = Circle::new(Point::from_integers(1, 0, prec()), eps()).unwrap();
    assert_eq!(circle_circle_intersection(&c1, &tiny).unwrap().len(), 2);
}

#[test]
fn circle_validation() {
    assert_eq!(Circle::new(Point::origin(prec()), int(0)).unwrap_err(), GeomError::InvalidCircle);
    assert_eq!(Circle::new(Point::origin(prec()), eps().inv().unwrap()).unwrap_err(), GeomError::InvalidCircle);
    assert!(Circle::general(pt(eps().inv().unwrap(), int(0)), eps().inv().unwrap()).is_ok());
}
