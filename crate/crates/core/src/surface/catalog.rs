//! Built-in surfaces with hand-written analytic jets, each available as a
//! chart and as a level set with matching orientation.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{ChartJet, ImplicitJet, ImplicitSurface, ParamDomain, ParametricSurface, POLE_MARGIN};
use crate::error::{Error, Result};
use crate::vec3::{Sym3, Vec3};

const PLANE_EXTENT: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Catalog {
    /// `r (cos v cos u, cos v sin u, sin v)`
    Sphere { r: f64 },
    /// `(r cos u, r sin u, v)`
    Cylinder { r: f64 },
    /// `(u, v, 0)`
    Plane,
    /// `((R + r cos v) cos u, (R + r cos v) sin u, r sin v)`
    Torus { major: f64, minor: f64 },
    /// `(v cos u, v sin u, a u)`
    Helicoid { a: f64 },
    /// `(a cos v cos u, b cos v sin u, c sin v)`
    Ellipsoid { a: f64, b: f64, c: f64 },
    /// `(u, v, u³ - 3uv²)`
    MonkeySaddle,
}

impl Catalog {
    pub const NAMES: [&'static str; 7] = [
        "sphere",
        "cylinder",
        "plane",
        "torus",
        "helicoid",
        "ellipsoid",
        "monkey_saddle",
    ];

    /// Build from a catalog name and `key=value` parameters; missing keys take defaults.
    pub fn from_name(name: &str, params: &[(String, f64)]) -> Result<Catalog> {
        let get = |key: &str, default: f64| -> Result<f64> {
            let v = params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .unwrap_or(default);
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(Error::invalid(format!("parameter {key} of {name} must be positive, got {v}")))
            }
        };
        let allowed: &[&str] = match name {
            "sphere" | "cylinder" => &["r"],
            "torus" => &["R", "r"],
            "helicoid" => &["a"],
            "ellipsoid" => &["a", "b", "c"],
            "plane" | "monkey_saddle" => &[],
            _ => {
                return Err(Error::invalid(format!(
                    "unknown builtin surface '{name}' (known: {})",
                    Catalog::NAMES.join(", ")
                )))
            }
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::invalid(format!("unknown parameter '{k}' for builtin {name}")));
        }
        let surface = match name {
            "sphere" => Catalog::Sphere { r: get("r", 1.0)? },
            "cylinder" => Catalog::Cylinder { r: get("r", 1.0)? },
            "plane" => Catalog::Plane,
            "torus" => {
                let major = get("R", 2.0)?;
                let minor = get("r", 0.5)?;
                if minor >= major {
                    return Err(Error::invalid("torus needs r < R"));
                }
                Catalog::Torus { major, minor }
            }
            "helicoid" => Catalog::Helicoid { a: get("a", 1.0)? },
            "ellipsoid" => Catalog::Ellipsoid {
                a: get("a", 2.0)?,
                b: get("b", 1.5)?,
                c: get("c", 1.0)?,
            },
            _ => Catalog::MonkeySaddle,
        };
        Ok(surface)
    }

    pub fn chart(self) -> CatalogChart {
        CatalogChart(self)
    }

    pub fn level_set(self) -> CatalogLevelSet {
        CatalogLevelSet(self)
    }

    pub fn describe(&self) -> String {
        match *self {
            Catalog::Sphere { r } => format!("builtin:sphere?r={r}"),
            Catalog::Cylinder { r } => format!("builtin:cylinder?r={r}"),
            Catalog::Plane => "builtin:plane".into(),
            Catalog::Torus { major, minor } => format!("builtin:torus?R={major}&r={minor}"),
            Catalog::Helicoid { a } => format!("builtin:helicoid?a={a}"),
            Catalog::Ellipsoid { a, b, c } => format!("builtin:ellipsoid?a={a}&b={b}&c={c}"),
            Catalog::MonkeySaddle => "builtin:monkey_saddle".into(),
        }
    }

    /// Chart formula and level-set formula, for `catalog` listings.
    pub fn formulas(&self) -> (&'static str, &'static str) {
        match self {
            Catalog::Sphere { .. } => (
                "r(cos v cos u, cos v sin u, sin v)",
                "x^2 + y^2 + z^2 - r^2",
            ),
            Catalog::Cylinder { .. } => ("(r cos u, r sin u, v)", "x^2 + y^2 - r^2"),
            Catalog::Plane => ("(u, v, 0)", "z"),
            Catalog::Torus { .. } => (
                "((R + r cos v) cos u, (R + r cos v) sin u, r sin v)",
                "(x^2 + y^2 + z^2 + R^2 - r^2)^2 - 4R^2(x^2 + y^2)",
            ),
            Catalog::Helicoid { .. } => ("(v cos u, v sin u, a u)", "y cos(z/a) - x sin(z/a)"),
            Catalog::Ellipsoid { .. } => (
                "(a cos v cos u, b cos v sin u, c sin v)",
                "x^2/a^2 + y^2/b^2 + z^2/c^2 - 1",
            ),
            Catalog::MonkeySaddle => ("(u, v, u^3 - 3uv^2)", "z - x^3 + 3xy^2"),
        }
    }
}

/// Chart form of a [`Catalog`] surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogChart(pub Catalog);

/// Level-set form of a [`Catalog`] surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogLevelSet(pub Catalog);

fn latitude_domain() -> ParamDomain {
    ParamDomain::new((-PI, PI), (-FRAC_PI_2 + POLE_MARGIN, FRAC_PI_2 - POLE_MARGIN)).periodic(true, false)
}

/// Ellipsoid chart; the sphere is the case `a = b = c = r`.
fn ellipsoid_jet(a: f64, b: f64, c: f64, u: f64, v: f64) -> ChartJet {
    let (su, cu) = u.sin_cos();
    let (sv, cv) = v.sin_cos();
    let s = |x: f64, y: f64, z: f64| Vec3::new(a * x, b * y, c * z);
    ChartJet {
        point: s(cv * cu, cv * su, sv),
        du: s(-cv * su, cv * cu, 0.0),
        dv: s(-sv * cu, -sv * su, cv),
        duu: s(-cv * cu, -cv * su, 0.0),
        duv: s(sv * su, -sv * cu, 0.0),
        dvv: s(-cv * cu, -cv * su, -sv),
    }
}

impl ParametricSurface for CatalogChart {
    fn domain(&self) -> ParamDomain {
        match self.0 {
            Catalog::Sphere { .. } | Catalog::Ellipsoid { .. } => latitude_domain(),
            Catalog::Cylinder { .. } => {
                ParamDomain::new((-PI, PI), (-PLANE_EXTENT, PLANE_EXTENT)).periodic(true, false)
            }
            Catalog::Plane => ParamDomain::new((-PLANE_EXTENT, PLANE_EXTENT), (-PLANE_EXTENT, PLANE_EXTENT)),
            Catalog::Torus { .. } => ParamDomain::new((-PI, PI), (-PI, PI)).periodic(true, true),
            Catalog::Helicoid { .. } => ParamDomain::new((-4.0 * PI, 4.0 * PI), (-10.0, 10.0)),
            Catalog::MonkeySaddle => ParamDomain::new((-10.0, 10.0), (-10.0, 10.0)),
        }
    }

    fn jet(&self, u: f64, v: f64) -> Result<ChartJet> {
        let (su, cu) = u.sin_cos();
        let jet = match self.0 {
            Catalog::Sphere { r } => ellipsoid_jet(r, r, r, u, v),
            Catalog::Ellipsoid { a, b, c } => ellipsoid_jet(a, b, c, u, v),
            Catalog::Cylinder { r } => ChartJet {
                point: Vec3::new(r * cu, r * su, v),
                du: Vec3::new(-r * su, r * cu, 0.0),
                dv: Vec3::Z,
                duu: Vec3::new(-r * cu, -r * su, 0.0),
                duv: Vec3::ZERO,
                dvv: Vec3::ZERO,
            },
            Catalog::Plane => ChartJet {
                point: Vec3::new(u, v, 0.0),
                du: Vec3::X,
                dv: Vec3::Y,
                duu: Vec3::ZERO,
                duv: Vec3::ZERO,
                dvv: Vec3::ZERO,
            },
            Catalog::Torus { major, minor } => {
                let (sv, cv) = v.sin_cos();
                let rho = major + minor * cv;
                ChartJet {
                    point: Vec3::new(rho * cu, rho * su, minor * sv),
                    du: Vec3::new(-rho * su, rho * cu, 0.0),
                    dv: Vec3::new(-minor * sv * cu, -minor * sv * su, minor * cv),
                    duu: Vec3::new(-rho * cu, -rho * su, 0.0),
                    duv: Vec3::new(minor * sv * su, -minor * sv * cu, 0.0),
                    dvv: Vec3::new(-minor * cv * cu, -minor * cv * su, -minor * sv),
                }
            }
            Catalog::Helicoid { a } => ChartJet {
                point: Vec3::new(v * cu, v * su, a * u),
                du: Vec3::new(-v * su, v * cu, a),
                dv: Vec3::new(cu, su, 0.0),
                duu: Vec3::new(-v * cu, -v * su, 0.0),
                duv: Vec3::new(-su, cu, 0.0),
                dvv: Vec3::ZERO,
            },
            Catalog::MonkeySaddle => ChartJet {
                point: Vec3::new(u, v, u * u * u - 3.0 * u * v * v),
                du: Vec3::new(1.0, 0.0, 3.0 * u * u - 3.0 * v * v),
                dv: Vec3::new(0.0, 1.0, -6.0 * u * v),
                duu: Vec3::new(0.0, 0.0, 6.0 * u),
                duv: Vec3::new(0.0, 0.0, -6.0 * v),
                dvv: Vec3::new(0.0, 0.0, -6.0 * u),
            },
        };
        Ok(jet)
    }

    fn describe(&self) -> String {
        self.0.describe()
    }
}

impl ImplicitSurface for CatalogLevelSet {
    fn jet(&self, p: Vec3) -> Result<ImplicitJet> {
        let Vec3 { x, y, z } = p;
        let jet = match self.0 {
            Catalog::Sphere { r } => ImplicitJet {
                value: p.norm_squared() - r * r,
                gradient: p * 2.0,
                hessian: Sym3::diagonal(2.0, 2.0, 2.0),
            },
            Catalog::Ellipsoid { a, b, c } => {
                let (a2, b2, c2) = (a * a, b * b, c * c);
                ImplicitJet {
                    value: x * x / a2 + y * y / b2 + z * z / c2 - 1.0,
                    gradient: Vec3::new(2.0 * x / a2, 2.0 * y / b2, 2.0 * z / c2),
                    hessian: Sym3::diagonal(2.0 / a2, 2.0 / b2, 2.0 / c2),
                }
            }
            Catalog::Cylinder { r } => ImplicitJet {
                value: x * x + y * y - r * r,
                gradient: Vec3::new(2.0 * x, 2.0 * y, 0.0),
                hessian: Sym3::diagonal(2.0, 2.0, 0.0),
            },
            Catalog::Plane => ImplicitJet {
                value: z,
                gradient: Vec3::Z,
                hessian: Sym3::ZERO,
            },
            Catalog::Torus { major, minor } => {
                let r2 = major * major;
                let q = p.norm_squared() + r2 - minor * minor;
                let planar = Vec3::new(x, y, 0.0);
                ImplicitJet {
                    value: q * q - 4.0 * r2 * (x * x + y * y),
                    gradient: p * (4.0 * q) - planar * (8.0 * r2),
                    hessian: Sym3::outer(p)
                        .scale(8.0)
                        .add(&Sym3::diagonal(4.0 * q - 8.0 * r2, 4.0 * q - 8.0 * r2, 4.0 * q)),
                }
            }
            Catalog::Helicoid { a } => {
                let (s, c) = (z / a).sin_cos();
                ImplicitJet {
                    value: y * c - x * s,
                    gradient: Vec3::new(-s, c, -(x * c + y * s) / a),
                    hessian: Sym3 {
                        xx: 0.0,
                        xy: 0.0,
                        xz: -c / a,
                        yy: 0.0,
                        yz: -s / a,
                        zz: (x * s - y * c) / (a * a),
                    },
                }
            }
            Catalog::MonkeySaddle => ImplicitJet {
                value: z - x * x * x + 3.0 * x * y * y,
                gradient: Vec3::new(-3.0 * x * x + 3.0 * y * y, 6.0 * x * y, 1.0),
                hessian: Sym3 {
                    xx: -6.0 * x,
                    xy: 6.0 * y,
                    xz: 0.0,
                    yy: 6.0 * x,
                    yz: 0.0,
                    zz: 0.0,
                },
            },
        };
        Ok(jet)
    }

    fn describe(&self) -> String {
        format!("{} (implicit)", self.0.describe())
    }
}
