//! Ground-truth families.

use crate::exactalg::{MPoly, Rat, Vars};
use crate::{Error, Result};

use super::{FamilySpec, MovingPoint};

pub const FIXTURE_IDS: [&str; 16] = [
    "F1",
    "F2",
    "F3",
    "F4",
    "F5",
    "F6",
    "F7",
    "F7-planes",
    "F8",
    "F10",
    "F11",
    "F12",
    "cone-line-vertex",
    "cone-over-developable",
    "osculating-pencils",
    "osculating-envelopes",
];

pub fn fixture_ids() -> &'static [&'static str] {
    &FIXTURE_IDS
}

/// `(1, s, …, s^d)` followed by `pad_before` leading and `pad_after` trailing zeros.
fn rnc(vars: &Vars, i: usize, d: u32, pad_before: usize, pad_after: usize) -> Vec<MPoly> {
    let s = MPoly::var(vars, i);
    let mut out = vec![MPoly::zero(vars); pad_before];
    out.extend((0..=d).map(|e| s.pow(e)));
    out.extend(std::iter::repeat(MPoly::zero(vars)).take(pad_after));
    out
}

fn deriv(p: &[MPoly], i: usize) -> Vec<MPoly> {
    p.iter().map(|c| c.derivative(i)).collect()
}

fn add(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn constant_point(vars: &Vars, v: &[i64]) -> Vec<MPoly> {
    v.iter().map(|&c| MPoly::constant(vars, Rat::from_integer(c.into()))).collect()
}

fn unit_point(vars: &Vars, len: usize, i: usize) -> Vec<MPoly> {
    let mut v = vec![0; len];
    v[i] = 1;
    constant_point(vars, &v)
}

fn build(n_amb: usize, vars: &Vars, points: Vec<Vec<MPoly>>, label: &str) -> Result<FamilySpec> {
    let k = points.len() - 1;
    let span = points.into_iter().map(MovingPoint::new).collect::<Result<Vec<_>>>()?;
    FamilySpec::new(n_amb, k, vars.clone(), span, label)
}

/// Default curves of the band: `C(t) = (1,t,t²,t³,0,0)`, `D(t) = (0,0,0,1,t,t²)`.
fn default_band_curves() -> (MovingPoint, MovingPoint) {
    let v = Vars::new(&["t"]);
    let c = MovingPoint::new(rnc(&v, 0, 3, 0, 2)).unwrap();
    let d = MovingPoint::new(rnc(&v, 0, 2, 3, 0)).unwrap();
    (c, d)
}

/// Default surface of the cone: the Veronese patch `(1,u,v,u²,uv,v²)`.
fn default_cone_surface() -> MovingPoint {
    MovingPoint::new(veronese(&Vars::new(&["u", "v"]))).unwrap()
}

fn veronese(v: &Vars) -> Vec<MPoly> {
    let u = MPoly::var(v, 0);
    let w = MPoly::var(v, 1);
    vec![MPoly::one(v), u.clone(), w.clone(), u.pow(2), &u * &w, w.pow(2)]
}

fn check_curve(c: &MovingPoint) -> Result<Vars> {
    let vars = c.coords()[0].vars().clone();
    if vars.len() != 1 {
        return Err(Error::input("band curves must depend on exactly one parameter"));
    }
    Ok(vars)
}

/// Lines `⟨C(t), C′(t) + u·D(t)⟩` of the band built on the curves `C`, `D`.
pub fn band_lines(c: &MovingPoint, d: &MovingPoint) -> Result<FamilySpec> {
    let cv = check_curve(c)?;
    if check_curve(d)? != cv || c.coords().len() != d.coords().len() {
        return Err(Error::input("band curves must share their parameter and ambient space"));
    }
    let name = &cv.names()[0];
    if name == "u" {
        return Err(Error::input("band curve parameter must not be called `u`"));
    }
    let vars = Vars::new(&[name.as_str(), "u"]);
    let emb = |p: &[MPoly]| -> Vec<MPoly> { p.iter().map(|x| x.embed(&vars, &[0])).collect() };
    let cc = emb(c.coords());
    let dc = emb(d.coords());
    let u = MPoly::var(&vars, 1);
    let second = add(&deriv(&cc, 0), &dc.iter().map(|x| &u * x).collect::<Vec<_>>());
    build(c.coords().len() - 1, &vars, vec![cc, second], "band lines")
}

/// Planes `⟨C(t), C′(t), D(t)⟩`.
pub fn band_planes(c: &MovingPoint, d: &MovingPoint) -> Result<FamilySpec> {
    let cv = check_curve(c)?;
    if check_curve(d)? != cv || c.coords().len() != d.coords().len() {
        return Err(Error::input("band curves must share their parameter and ambient space"));
    }
    let cc = c.coords().to_vec();
    build(
        cc.len() - 1,
        &cv,
        vec![cc.clone(), deriv(&cc, 0), d.coords().to_vec()],
        "band planes",
    )
}

/// Lines joining a fixed vertex to the points of a surface `S(u, v)`.
pub fn cone_over_surface(vertex: &[Rat], s: &MovingPoint) -> Result<FamilySpec> {
    let vars = s.coords()[0].vars().clone();
    if vars.len() != 2 {
        return Err(Error::input("cone surface must depend on exactly two parameters"));
    }
    if vertex.len() != s.coords().len() {
        return Err(Error::Shape {
            expected: format!("vertex with {} coordinates", s.coords().len()),
            found: format!("{} coordinates", vertex.len()),
        });
    }
    let vp: Vec<MPoly> = vertex.iter().map(|c| MPoly::constant(&vars, c.clone())).collect();
    build(vertex.len() - 1, &vars, vec![vp, s.coords().to_vec()], "cone over a surface")
}

/// Looks up a catalog family by id.
pub fn fixture(name: &str) -> Result<FamilySpec> {
    let t1 = Vars::new(&["t"]);
    let su = Vars::new(&["s", "u"]);
    let uv = Vars::new(&["u", "v"]);
    let ts = Vars::new(&["t", "s"]);
    match name {
        "F1" => {
            let c = rnc(&t1, 0, 3, 0, 0);
            build(3, &t1, vec![c.clone(), deriv(&c, 0)], "tangent lines of the twisted cubic")
        }
        "F2" => build(
            3,
            &t1,
            vec![unit_point(&t1, 4, 3), rnc(&t1, 0, 2, 0, 1)],
            "cone over a conic",
        ),
        "F3" => {
            let t = MPoly::var(&t1, 0);
            let (o, z) = (MPoly::one(&t1), MPoly::zero(&t1));
            build(
                3,
                &t1,
                vec![vec![o.clone(), t.clone(), z.clone(), z.clone()], vec![z.clone(), z, o, t]],
                "ruling of a smooth quadric",
            )
        }
        "F4" => build(
            4,
            &su,
            vec![rnc(&su, 0, 4, 0, 0), rnc(&su, 1, 4, 0, 0)],
            "secant lines of the rational normal quartic",
        ),
        "F5" => {
            let c = rnc(&t1, 0, 4, 0, 0);
            let c1 = deriv(&c, 0);
            let c2 = deriv(&c1, 0);
            build(4, &t1, vec![c, c1, c2], "osculating planes of the rational normal quartic")
        }
        "F6" => build(
            5,
            &su,
            vec![rnc(&su, 0, 2, 0, 3), rnc(&su, 1, 2, 3, 0)],
            "join of two conics",
        ),
        "F7" => {
            let (c, d) = default_band_curves();
            Ok(band_lines(&c, &d)?.with_label("band"))
        }
        "F7-planes" => {
            let (c, d) = default_band_curves();
            Ok(band_planes(&c, &d)?.with_label("band planes"))
        }
        "F8" => {
            let s = default_cone_surface();
            let padded: Vec<MPoly> = s
                .coords()
                .iter()
                .cloned()
                .chain(std::iter::once(MPoly::zero(&uv)))
                .collect();
            let mut vertex = vec![Rat::from_integer(0.into()); 7];
            vertex[6] = Rat::from_integer(1.into());
            Ok(cone_over_surface(&vertex, &MovingPoint::new(padded)?)?
                .with_label("cone over the Veronese surface"))
        }
        "F10" => {
            let s = veronese(&uv);
            build(5, &uv, vec![s.clone(), deriv(&s, 0)], "tangent lines of the Veronese surface")
        }
        "F11" => {
            let t = MPoly::var(&ts, 0);
            let s = MPoly::var(&ts, 1);
            let (o, z) = (MPoly::one(&ts), MPoly::zero(&ts));
            let vtx = vec![o.clone(), t.clone(), t.pow(2), z.clone(), z.clone()];
            let e = vec![z.clone(), z, o, &s + &(&t * &s.pow(2)), s.pow(2)];
            build(4, &ts, vec![vtx, e], "cones with moving vertex")
        }
        "F12" => {
            let cs = rnc(&su, 0, 5, 0, 0);
            let cu = rnc(&su, 1, 5, 0, 0);
            let third = add(&deriv(&cs, 0), &deriv(&cu, 1));
            build(5, &su, vec![cs, cu, third], "planes through two points of the quintic")
        }
        "cone-line-vertex" => build(
            4,
            &t1,
            vec![unit_point(&t1, 5, 3), unit_point(&t1, 5, 4), rnc(&t1, 0, 2, 0, 2)],
            "cone with a line vertex over a conic",
        ),
        "cone-over-developable" => {
            let c = rnc(&t1, 0, 3, 0, 1);
            build(
                4,
                &t1,
                vec![unit_point(&t1, 5, 4), c.clone(), deriv(&c, 0)],
                "cone over the tangent developable of the twisted cubic",
            )
        }
        "osculating-pencils" | "osculating-envelopes" => {
            // lines inside the osculating planes of the quartic through a point
            // of its tangent developable
            let c = rnc(&ts, 0, 4, 0, 0);
            let c1 = deriv(&c, 0);
            let c2 = deriv(&c1, 0);
            let s = MPoly::var(&ts, 1);
            let on_dev = add(&c, &c1.iter().map(|x| &s * x).collect::<Vec<_>>());
            if name == "osculating-pencils" {
                build(4, &ts, vec![c2, on_dev], "lines through C'' in the osculating planes")
            } else {
                let s2 = s.pow(2);
                let other = add(&c2, &c1.iter().map(|x| &s2 * x).collect::<Vec<_>>());
                build(4, &ts, vec![on_dev, other], "lines tangent to two surfaces in the osculating planes")
            }
        }
        other => Err(Error::input(format!("unknown fixture `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_entry_builds() {
        for id in FIXTURE_IDS {
            let f = fixture(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(f.span().len(), f.k() + 1);
        }
        assert!(fixture("F9").is_err());
    }

    #[test]
    fn shapes_of_named_fixtures() {
        let dims = |id: &str| {
            let f = fixture(id).unwrap();
            (f.ambient(), f.k(), f.n())
        };
        assert_eq!(dims("F1"), (3, 1, 1));
        assert_eq!(dims("F4"), (4, 1, 2));
        assert_eq!(dims("F5"), (4, 2, 1));
        assert_eq!(dims("F7"), (5, 1, 2));
        assert_eq!(dims("F8"), (6, 1, 2));
        assert_eq!(dims("F12"), (5, 2, 2));
    }
}
