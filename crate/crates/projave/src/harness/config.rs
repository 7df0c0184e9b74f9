//! Serializable run configurations: profile and body specifications, the
//! polytope fixture text format, and the per-command config payloads.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bodies::{ConvexBody, Ellipsoid, Facet, Polytope};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::profiles::Profile;
use crate::quadrature::QuadratureSpec;

fn default_amplitude() -> f64 {
    1.0
}

/// JSON-facing profile description; validated on `build`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    AubinTalenti {
        n: usize,
        p: f64,
        a: f64,
        b: f64,
        #[serde(default)]
        x0: Option<Vec<f64>>,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    AffineExtremizer {
        n: usize,
        p: f64,
        a: f64,
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        x0: Option<Vec<f64>>,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    Gaussian {
        n: usize,
        scale: f64,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    CharOfBody {
        n: usize,
        body: BodySpec,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
}

impl ProfileSpec {
    pub fn build(&self) -> Result<Profile> {
        match self {
            ProfileSpec::AubinTalenti {
                n,
                p,
                a,
                b,
                x0,
                amplitude,
            } => Profile::aubin_talenti(
                *n,
                *p,
                *a,
                *b,
                x0.clone().unwrap_or_else(|| vec![0.0; *n]),
            )?
            .with_amplitude(*amplitude),
            ProfileSpec::AffineExtremizer {
                n,
                p,
                a,
                matrix,
                x0,
                amplitude,
            } => Profile::affine_extremizer(
                *n,
                *p,
                *a,
                Matrix::from_rows(matrix)?,
                x0.clone().unwrap_or_else(|| vec![0.0; *n]),
            )?
            .with_amplitude(*amplitude),
            ProfileSpec::Gaussian {
                n,
                scale,
                amplitude,
            } => Profile::gaussian(*n, *scale)?.with_amplitude(*amplitude),
            ProfileSpec::CharOfBody { n, body, amplitude } => {
                Profile::char_of_body(body.build_convex_body()?, *n)?.with_amplitude(*amplitude)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ProfileSpec::AubinTalenti { n, p, a, b, .. } => {
                format!("aubin-talenti n={n} p={p} a={a} b={b}")
            }
            ProfileSpec::AffineExtremizer { n, p, .. } => format!("affine-extremizer n={n} p={p}"),
            ProfileSpec::Gaussian { n, scale, .. } => format!("gaussian n={n} scale={scale}"),
            ProfileSpec::CharOfBody { body, .. } => format!("char-of {}", body.label()),
        }
    }
}

fn default_subdivisions() -> usize {
    3
}

/// JSON-facing body description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Cube {
        n: usize,
    },
    CrossPolytope {
        n: usize,
    },
    Simplex,
    Ball {
        #[serde(default = "default_subdivisions")]
        subdivisions: usize,
    },
    Zonotope {
        generators: Vec<Vec<f64>>,
    },
    LinearImage {
        base: Box<BodySpec>,
        matrix: Vec<Vec<f64>>,
    },
    Fixture {
        path: String,
    },
}

impl BodySpec {
    /// Polytope realization (balls become icosphere approximations).
    pub fn build_polytope(&self) -> Result<Polytope> {
        match self {
            BodySpec::Cube { n } => Ok(Polytope::cube(*n)),
            BodySpec::CrossPolytope { n } => Ok(Polytope::cross_polytope(*n)),
            BodySpec::Simplex => Ok(Polytope::regular_simplex3()),
            BodySpec::Ball { subdivisions } => Ok(Polytope::ball_approx(*subdivisions)),
            BodySpec::Zonotope { generators } => Polytope::zonotope3(generators),
            BodySpec::LinearImage { base, matrix } => {
                base.build_polytope()?.linear_image(&Matrix::from_rows(matrix)?)
            }
            BodySpec::Fixture { path } => read_polytope_fixture(Path::new(path)),
        }
    }

    /// Body realization for the BV functionals (balls stay analytic and are
    /// approximated inside the functional).
    pub fn build_convex_body(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Ball { .. } => Ok(ConvexBody::Ball(1.0)),
            BodySpec::LinearImage { base, matrix } => {
                let m = Matrix::from_rows(matrix)?;
                match base.as_ref() {
                    BodySpec::Ball { .. } => Ok(ConvexBody::Ellipsoid(Ellipsoid::new(m)?)),
                    _ => Ok(ConvexBody::Polytope(self.build_polytope()?)),
                }
            }
            _ => Ok(ConvexBody::Polytope(self.build_polytope()?)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BodySpec::Cube { n } => format!("cube n={n}"),
            BodySpec::CrossPolytope { n } => format!("cross-polytope n={n}"),
            BodySpec::Simplex => "regular-simplex".into(),
            BodySpec::Ball { subdivisions } => format!("ball approx-level={subdivisions}"),
            BodySpec::Zonotope { generators } => format!("zonotope m={}", generators.len()),
            BodySpec::LinearImage { base, .. } => format!("linear-image of {}", base.label()),
            BodySpec::Fixture { path } => format!("fixture {path}"),
        }
    }
}

/// Rotational-average residual sweep parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualSweepConfig {
    pub pairs: Vec<(usize, usize)>,
    pub p_list: Vec<f64>,
    pub random_directions: usize,
    pub n: usize,
}

/// Full run configuration, one variant per CLI subcommand. The quadrature
/// spec carries the mandatory seed; `--seed` on the command line overrides
/// it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RunConfig {
    Constants {
        n_min: u32,
        n_max: u32,
        p_list: Vec<f64>,
        quadrature: QuadratureSpec,
    },
    VerifySobolev {
        profiles: Vec<ProfileSpec>,
        i_list: Vec<usize>,
        /// deterministic tolerance for extremizer equality rows
        equality_tolerance: f64,
        quadrature: QuadratureSpec,
    },
    Chain {
        profile: ProfileSpec,
        p: f64,
        quadrature: QuadratureSpec,
    },
    Petty {
        bodies: Vec<BodySpec>,
        p_list: Vec<f64>,
        /// relative headroom on the sharp bound for screening rows
        rel_tolerance: f64,
        /// number of extra randomized origin-symmetric polytopes
        random_polytopes: usize,
        quadrature: QuadratureSpec,
    },
    GeomIneq {
        bodies: Vec<BodySpec>,
        pairs: Vec<(usize, usize)>,
        p_list: Vec<f64>,
        #[serde(default)]
        residual_sweep: Option<ResidualSweepConfig>,
        quadrature: QuadratureSpec,
    },
    Bv {
        bodies: Vec<BodySpec>,
        i_list: Vec<usize>,
        /// atom pairs for the random zonoid-norm sandwich rows (0 = skip)
        #[serde(default)]
        zonoid_atom_pairs: usize,
        /// volume-preserving matrix for the i = 1 invariance rows
        #[serde(default)]
        invariance_matrix: Option<Vec<Vec<f64>>>,
        quadrature: QuadratureSpec,
    },
}

impl RunConfig {
    pub fn command_name(&self) -> &'static str {
        match self {
            RunConfig::Constants { .. } => "constants",
            RunConfig::VerifySobolev { .. } => "verify-sobolev",
            RunConfig::Chain { .. } => "chain",
            RunConfig::Petty { .. } => "petty",
            RunConfig::GeomIneq { .. } => "geom-ineq",
            RunConfig::Bv { .. } => "bv",
        }
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        match self {
            RunConfig::Constants { quadrature, .. }
            | RunConfig::VerifySobolev { quadrature, .. }
            | RunConfig::Chain { quadrature, .. }
            | RunConfig::Petty { quadrature, .. }
            | RunConfig::GeomIneq { quadrature, .. }
            | RunConfig::Bv { quadrature, .. } => quadrature,
        }
    }

    pub fn set_seed(&mut self, seed: u64) {
        match self {
            RunConfig::Constants { quadrature, .. }
            | RunConfig::VerifySobolev { quadrature, .. }
            | RunConfig::Chain { quadrature, .. }
            | RunConfig::Petty { quadrature, .. }
            | RunConfig::GeomIneq { quadrature, .. }
            | RunConfig::Bv { quadrature, .. } => quadrature.seed = seed,
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.quadrature().validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Read the plain-text polytope fixture format:
///
/// ```text
/// # comments and blank lines anywhere
/// dim 3
/// vertices <count>
/// <x> <y> <z>
/// ...
/// facets <count>
/// <nx> <ny> <nz> <area> <incident-vertex-index>
/// ...
/// ```
pub fn read_polytope_fixture(path: &Path) -> Result<Polytope> {
    let text = fs::read_to_string(path)?;
    parse_polytope_fixture(&text)
        .map_err(|msg| Error::Config(format!("fixture {}: {msg}", path.display())))
}

pub fn parse_polytope_fixture(text: &str) -> std::result::Result<Polytope, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    fn expect_keyword<'a, I: Iterator<Item = &'a str>>(
        lines: &mut I,
        kw: &str,
    ) -> std::result::Result<usize, String> {
        let line = lines.next().ok_or_else(|| format!("missing '{kw}' line"))?;
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next()) {
            (Some(k), Some(v)) if k == kw => v
                .parse::<usize>()
                .map_err(|_| format!("bad count in '{line}'")),
            _ => Err(format!("expected '{kw} <count>', got '{line}'")),
        }
    }
    let dim = expect_keyword(&mut lines, "dim")?;
    let n_vertices = expect_keyword(&mut lines, "vertices")?;
    let mut vertices = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let line = lines.next().ok_or("missing vertex line")?;
        let v: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(str::parse::<f64>).collect();
        let v = v.map_err(|_| format!("bad vertex line '{line}'"))?;
        if v.len() != dim {
            return Err(format!("vertex line '{line}' has {} coordinates", v.len()));
        }
        vertices.push(v);
    }
    let n_facets = expect_keyword(&mut lines, "facets")?;
    let mut facets = Vec::with_capacity(n_facets);
    for _ in 0..n_facets {
        let line = lines.next().ok_or("missing facet line")?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != dim + 2 {
            return Err(format!("facet line '{line}' needs {} fields", dim + 2));
        }
        let normal: std::result::Result<Vec<f64>, _> =
            parts[..dim].iter().map(|s| s.parse::<f64>()).collect();
        let area = parts[dim]
            .parse::<f64>()
            .map_err(|_| format!("bad area in '{line}'"))?;
        let vertex = parts[dim + 1]
            .parse::<usize>()
            .map_err(|_| format!("bad vertex index in '{line}'"))?;
        facets.push(Facet {
            normal: normal.map_err(|_| format!("bad normal in '{line}'"))?,
            area,
            vertex,
        });
    }
    Polytope::new(dim, vertices, facets).map_err(|e| e.to_string())
}

/// Write a polytope in the fixture format.
pub fn format_polytope_fixture(polytope: &Polytope) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", polytope.dim()));
    out.push_str(&format!("vertices {}\n", polytope.n_vertices()));
    for k in 0..polytope.n_vertices() {
        let coords: Vec<String> = polytope.vertex(k).iter().map(|x| format!("{x}")).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("facets {}\n", polytope.facets().len()));
    for f in polytope.facets() {
        let coords: Vec<String> = f.normal.iter().map(|x| format!("{x}")).collect();
        out.push_str(&format!("{} {} {}\n", coords.join(" "), f.area, f.vertex));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_round_trip() {
        for poly in [
            Polytope::cube(3),
            Polytope::cross_polytope(3),
            Polytope::regular_simplex3(),
        ] {
            let text = format_polytope_fixture(&poly);
            let parsed = parse_polytope_fixture(&text).unwrap();
            assert_eq!(parsed.n_vertices(), poly.n_vertices());
            assert_eq!(parsed.facets().len(), poly.facets().len());
            assert!((parsed.volume() - poly.volume()).abs() < 1e-12);
        }
    }

    #[test]
    fn fixture_rejects_garbage() {
        assert!(parse_polytope_fixture("dim 3\nvertices 1\n0 0\n").is_err());
        assert!(parse_polytope_fixture("vertices 0\nfacets 0\n").is_err());
    }

    #[test]
    fn profile_spec_round_trip() {
        let spec = ProfileSpec::AubinTalenti {
            n: 3,
            p: 2.0,
            a: 1.0,
            b: 1.0,
            x0: None,
            amplitude: 1.0,
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: ProfileSpec = serde_json::from_str(&json).unwrap();
        let profile = back.build().unwrap();
        assert!(profile.is_radial());
    }

    #[test]
    fn body_spec_builds() {
        let spec = BodySpec::LinearImage {
            base: Box::new(BodySpec::Cube { n: 3 }),
            matrix: vec![
                vec![2.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.5],
            ],
        };
        let poly = spec.build_polytope().unwrap();
        assert!((poly.volume() - 8.0).abs() < 1e-12);
        let body = spec.build_convex_body().unwrap();
        assert!(matches!(body, ConvexBody::Polytope(_)));
        let ball_image = BodySpec::LinearImage {
            base: Box::new(BodySpec::Ball { subdivisions: 3 }),
            matrix: vec![
                vec![2.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.5],
            ],
        };
        assert!(matches!(
            ball_image.build_convex_body().unwrap(),
            ConvexBody::Ellipsoid(_)
        ));
    }

    #[test]
    fn run_config_json_round_trip() {
        let config = RunConfig::Chain {
            profile: ProfileSpec::Gaussian {
                n: 3,
                scale: 1.0,
                amplitude: 1.0,
            },
            p: 2.0,
            quadrature: QuadratureSpec::fast(42),
        };
        let json = config.to_json().unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.command_name(), "chain");
        assert_eq!(back.quadrature().seed, 42);
    }
}
