//! Properties `L×L` keeps: triangle angle sums and the absolute-geometry
//! axioms, checked on seeded samples plus fixed adversarial cases.

use std::cmp::Ordering;

use super::sample::Sampler;
use super::{CheckError, CheckName, CheckReport, Report, Verdict};
use crate::coeff::{ConstructibleReal, Sign};
use crate::ext::rotate;
use crate::field::{Precision, Validity};
use crate::geom::{
    angle_at, circle_circle_intersection, distance, is_between, line_circle_intersection,
    line_through, midpoint, point_in_ll, Circle, GeomError, Line, Point, Triangle,
};
use crate::SeriesNumber;

type CheckResult = Result<CheckReport, CheckError>;

fn int(n: i64, prec: Precision) -> SeriesNumber {
    SeriesNumber::from_integer(n, prec)
}

fn zero_through(s: &SeriesNumber, prec: Precision) -> bool {
    s.vanishes_below(prec.order)
}

fn pt(x: SeriesNumber, y: SeriesNumber) -> Point {
    Point::new(x, y)
}

fn fixed_triangles(prec: Precision) -> Vec<(&'static str, [Point; 3])> {
    let e = SeriesNumber::epsilon(prec);
    let o = || Point::origin(prec);
    let sqrt = |n: i64| {
        SeriesNumber::constant(
            ConstructibleReal::from_integer(n).checked_sqrt().expect("positive"),
            prec,
        )
    };
    vec![
        ("right isoceles (0,0), (1,0), (0,1)", [o(), Point::from_integers(1, 0, prec), Point::from_integers(0, 1, prec)]),
        ("halo (0,0), (e,0), (0,e)", [o(), pt(e.clone(), int(0, prec)), pt(int(0, prec), e.clone())]),
        ("thin (0,0), (1,0), (1,e)", [o(), Point::from_integers(1, 0, prec), pt(int(1, prec), e.clone())]),
        ("thin (0,0), (1,0), (1/2,e^2)", [o(), Point::from_integers(1, 0, prec), pt(SeriesNumber::ratio(1, 2, prec), &e * &e)]),
        ("mixed scale (0,0), (1,0), (e,e^2)", [o(), Point::from_integers(1, 0, prec), pt(e.clone(), &e * &e)]),
        ("radical (0,0), (sqrt 2,0), (0,sqrt 3)", [o(), pt(sqrt(2), int(0, prec)), pt(int(0, prec), sqrt(3))]),
    ]
}

fn random_vertices(s: &mut Sampler, kind: usize, prec: Precision) -> [Point; 3] {
    let e = SeriesNumber::epsilon(prec);
    match kind {
        // three vertices in the halo of one limited point
        1 => {
            let base = s.point();
            let scale = if s.index(2) == 0 { e.clone() } else { &e * &e };
            [0, 1, 2].map(|_| &base + &s.point().scale(&scale))
        }
        // third vertex infinitesimally close to the segment of the first two
        2 => {
            let a = s.point();
            let b = s.point();
            let t = ConstructibleReal::from_rational(s.rational(6, 7));
            let off = s.point().scale(&e);
            let c = &(&a + &(&b - &a).scale_coeff(&t)) + &off;
            [a, b, c]
        }
        3 => [s.radical_point(), s.radical_point(), s.radical_point()],
        _ => [s.point(), s.point(), s.point()],
    }
}

pub fn check_angle_sum(trials: usize, seed: u64, prec: Precision) -> CheckResult {
    if trials == 0 {
        return Err(CheckError::InvalidParameter("trials must be positive".into()));
    }
    let mut rep = Report::new(CheckName::AngleSum, prec);
    let mut sampler = Sampler::new(seed, 1, prec);
    let fixed = fixed_triangles(prec);
    let n_fixed = fixed.len().min(trials);
    let mut failures = 0usize;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut min_validity = Validity::Exact;
    let mut fixed = fixed.into_iter().take(n_fixed);
    while checked < trials {
        let (label, [a, b, c]) = match fixed.next() {
            Some((l, v)) => (Some(l), v),
            None => (None, random_vertices(&mut sampler, checked % 4, prec)),
        };
        let tri = match Triangle::new(a, b, c) {
            Ok(t) => t,
            Err(GeomError::CollinearVertices) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let sum = tri.angle_sum()?;
        let dir = sum.direction();
        min_validity = min_validity.min(dir.x.validity()).min(dir.y.validity());
        let ok = sum.is_straight_below(prec.order);
        if let Some(l) = label {
            rep.witness(format!("angle sum of {l}"), &sum);
        }
        if !ok {
            failures += 1;
            rep.witness(
                "angle sum differs from pi for triangle",
                format!("{}, {}, {}: {}", tri.a, tri.b, tri.c, sum),
            );
        }
        checked += 1;
    }
    let validity = match min_validity.order() {
        Some(q) => format!("O(e^{q})"),
        None => "exact".into(),
    };
    rep.note(format!(
        "sampled: {checked} triangles ({n_fixed} fixed adversarial, {} seeded random; {skipped} collinear draws skipped); counterclockwise interior angles compose to (-1, 0) up to {validity}; failures: {failures}",
        checked - n_fixed
    ));
    Ok(rep.finish(if failures == 0 { Verdict::Holds } else { Verdict::Fails }))
}

fn distinct_points(s: &mut Sampler) -> Result<(Point, Point), CheckError> {
    loop {
        let p = s.point();
        let q = s.point();
        if !p.coincides(&q)? {
            return Ok((p, q));
        }
    }
}

fn nonzero_direction(s: &mut Sampler) -> Result<Point, CheckError> {
    loop {
        let d = s.point();
        if !d.is_origin()? {
            return Ok(d);
        }
    }
}

/// Unique line through two points.
fn line_uniqueness(s: &mut Sampler) -> Result<bool, CheckError> {
    let (p, q) = distinct_points(s)?;
    let l = line_through(&p, &q)?;
    let far = &p + &(&q - &p).scale_coeff(&ConstructibleReal::from_integer(2));
    let others = [line_through(&q, &p)?, line_through(&p, &far)?, line_through(&midpoint(&p, &q), &q)?];
    let mut ok = l.contains(&p)? && l.contains(&q)?;
    for m in &others {
        ok &= l.same_as(m)?;
    }
    Ok(ok)
}

/// Trichotomy and transitivity of betweenness on four collinear points.
fn betweenness(s: &mut Sampler) -> Result<bool, CheckError> {
    let (p, q) = distinct_points(s)?;
    let mut ts = Vec::new();
    while ts.len() < 4 {
        let t = s.rational(9, 5);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    ts.sort();
    let d = &q - &p;
    let x: Vec<Point> = ts
        .iter()
        .map(|t| &p + &d.scale_coeff(&ConstructibleReal::from_rational(t.clone())))
        .collect();
    let mut ok = true;
    let perm = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    for [i, j, k] in perm {
        let (a, b, c) = (&x[i], &x[j], &x[k]);
        let count = [is_between(b, a, c)?, is_between(a, b, c)?, is_between(a, c, b)?]
            .iter()
            .filter(|&&t| t)
            .count();
        ok &= count == 1;
    }
    ok &= is_between(&x[0], &x[1], &x[2])? && is_between(&x[1], &x[2], &x[3])?;
    ok &= is_between(&x[0], &x[1], &x[3])? && is_between(&x[0], &x[2], &x[3])?;
    let off = Point::new(&x[1].x + &d.y, &x[1].y - &d.x);
    ok &= !is_between(&x[0], &off, &x[2])?;
    Ok(ok)
}

/// A point on the ray from `c` along `dir` at distance `len`.
fn transport_segment(c: &Point, dir: &Point, len: &SeriesNumber) -> Result<Point, CheckError> {
    let unit = dir.normalized_direction()?;
    let k = len * &unit.norm2().sqrt()?.inv()?;
    Ok(c + &unit.scale(&k))
}

fn segment_transport(s: &mut Sampler, prec: Precision) -> Result<bool, CheckError> {
    let (a, b) = distinct_points(s)?;
    let c = s.point();
    let dir = nonzero_direction(s)?;
    let len = distance(&a, &b)?;
    let d = transport_segment(&c, &dir, &len)?;
    let on_ray = zero_through(&dir.cross(&(&d - &c)), prec) && dir.dot(&(&d - &c)).sign()? == Sign::Positive;
    let congruent = zero_through(&((&d - &c).norm2() - (&a - &b).norm2()), prec);
    Ok(on_ray && congruent && point_in_ll(&d)?)
}

fn angle_transport(s: &mut Sampler, prec: Precision) -> Result<bool, CheckError> {
    let (v, p, q) = loop {
        let (v, p, q) = (s.point(), s.point(), s.point());
        match Triangle::new(v.clone(), p.clone(), q.clone()) {
            Ok(_) => break (v, p, q),
            Err(GeomError::CollinearVertices) => continue,
            Err(e) => return Err(e.into()),
        }
    };
    let angle = angle_at(&v, &p, &q)?;
    let c = s.point();
    let dir = nonzero_direction(s)?;
    let turned = rotate(&dir, &angle.direction())?;
    let e = &c + &turned;
    let copy = angle_at(&c, &(&c + &dir), &e)?;
    // Normalizing an infinitesimal ray costs validity, so agreement is
    // required through what the copy carries, and at least order K/2.
    let same = copy.agrees_tracked(&angle, prec.order / 2);
    Ok(same && point_in_ll(&e)?)
}

fn random_radius(s: &mut Sampler, prec: Precision) -> SeriesNumber {
    let r0 = ConstructibleReal::from_rational(s.positive_rational(12, 6));
    SeriesNumber::constant(r0, prec) + s.series(&[1, 2], 12, 6)
}

fn intersections_ok(points: &[Point], residuals: &[&dyn Fn(&Point) -> SeriesNumber], prec: Precision) -> Result<bool, CheckError> {
    let mut ok = points.len() == 2 && !points[0].agrees_with(&points[1]);
    for p in points {
        ok &= point_in_ll(p)?;
        for r in residuals {
            ok &= zero_through(&r(p), prec);
        }
    }
    Ok(ok)
}

/// Strictly overlapping limited circles meet twice inside `L×L`.
fn circle_circle(s: &mut Sampler, prec: Precision) -> Result<bool, CheckError> {
    let (c1, c2, r1, r2) = loop {
        let c1 = s.point();
        let c2 = s.point();
        let r1 = random_radius(s, prec);
        let r2 = random_radius(s, prec);
        let d2 = (&c2 - &c1).norm2();
        let lo = (&r1 - &r2) * (&r1 - &r2);
        let hi = (&r1 + &r2) * (&r1 + &r2);
        if lo.cmp_series(&d2)? == Ordering::Less && d2.cmp_series(&hi)? == Ordering::Less && d2.classify()?.class != crate::field::MagnitudeClass::Infinitesimal {
            break (c1, c2, r1, r2);
        }
    };
    let k1 = Circle::new(c1, r1)?;
    let k2 = Circle::new(c2, r2)?;
    let pts = circle_circle_intersection(&k1, &k2)?;
    intersections_ok(&pts, &[&|p| k1.residual(p), &|p| k2.residual(p)], prec)
}

/// A line through an interior point of a limited circle meets it twice
/// inside `L×L`.
fn line_circle(s: &mut Sampler, prec: Precision) -> Result<bool, CheckError> {
    let (k, p) = loop {
        let c = s.point();
        let r = random_radius(s, prec);
        let p = s.point();
        if (&p - &c).norm2().cmp_series(&(&r * &r))? == Ordering::Less {
            break (Circle::new(c, r)?, p);
        }
    };
    let dir = nonzero_direction(s)?;
    let l = line_through(&p, &(&p + &dir))?;
    let pts = line_circle_intersection(&l, &k)?;
    intersections_ok(&pts, &[&|q| k.residual(q), &|q| l.residual(q)], prec)
}

pub fn check_absolute_suite(trials: usize, seed: u64, prec: Precision) -> CheckResult {
    if trials == 0 {
        return Err(CheckError::InvalidParameter("trials must be positive".into()));
    }
    let mut rep = Report::new(CheckName::Absolute, prec);
    let e = SeriesNumber::epsilon(prec);
    let mut all = true;

    let start = Point::new(e.clone(), int(0, prec));
    let root2 = distance(&Point::origin(prec), &Point::from_integers(1, 1, prec))?;
    let moved = transport_segment(&start, &Point::from_integers(1, 0, prec), &root2)?;
    let moved_ok = moved.agrees_with(&Point::new(&e + &root2, int(0, prec)))
        && point_in_ll(&moved)?
        && zero_through(&(distance(&start, &moved)? - &root2), prec);
    rep.witness("segment of length sqrt 2 transported from (e,0) along the x-axis ends at", &moved);
    all &= moved_ok;

    let circle = Circle::new(Point::new(int(0, prec), e.clone()), int(1, prec))?;
    let line = Line::horizontal(e.clone())?;
    let pts = line_circle_intersection(&line, &circle)?;
    let expected = [Point::new(int(-1, prec), e.clone()), Point::new(int(1, prec), e.clone())];
    let fixed_ok = pts.len() == 2
        && expected.iter().all(|x| pts.iter().any(|p| p.agrees_with(x)))
        && intersections_ok(&pts, &[&|p| circle.residual(p), &|p| line.residual(p)], prec)?;
    for p in &pts {
        rep.witness("y = e meets the unit circle about (0,e) at", p);
    }
    all &= fixed_ok;

    let mut sampler = Sampler::new(seed, 2, prec);
    type Family = fn(&mut Sampler, Precision) -> Result<bool, CheckError>;
    let families: [(&str, Family); 6] = [
        ("line uniqueness", |s, _| line_uniqueness(s)),
        ("betweenness order", |s, _| betweenness(s)),
        ("segment transport", segment_transport),
        ("angle transport", angle_transport),
        ("circle-circle", circle_circle),
        ("line-circle", line_circle),
    ];
    let mut summary = Vec::new();
    for (label, f) in families {
        let mut passed = 0;
        for _ in 0..trials {
            if f(&mut sampler, prec)? {
                passed += 1;
            }
        }
        all &= passed == trials;
        summary.push(format!("{label} {passed}/{trials}"));
    }
    rep.note(format!("sampled: {}", summary.join(", ")));
    Ok(rep.finish(if all { Verdict::Holds } else { Verdict::Fails }))
}
