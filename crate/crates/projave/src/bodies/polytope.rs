//! Polytopes carried as redundant vertex + facet data with a consistency
//! validator. Facet data is exact for the bundled fixtures, so surface-area
//! measures and volumes need no convex-hull computation.

use std::collections::HashMap;

use crate::bodies::measure::DiscreteSphereMeasure;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, normalize, Matrix};

const HULL_TOL: f64 = 1e-9;

/// One facet: outer unit normal, (n-1)-dimensional measure, and the index
/// of one incident vertex.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub area: f64,
    pub vertex: usize,
}

#[derive(Debug, Clone)]
pub struct Polytope {
    n: usize,
    vertices: Vec<f64>,
    facets: Vec<Facet>,
}

impl Polytope {
    pub fn new(n: usize, vertices: Vec<Vec<f64>>, facets: Vec<Facet>) -> Result<Self> {
        let mut flat = Vec::with_capacity(vertices.len() * n);
        for (k, v) in vertices.iter().enumerate() {
            if v.len() != n {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {k} has dimension {} != {n}",
                    v.len()
                )));
            }
            flat.extend_from_slice(v);
        }
        let p = Polytope {
            n,
            vertices: flat,
            facets,
        };
        p.validate()?;
        Ok(p)
    }

    /// Consistency checks: unit normals, positive areas, valid vertex
    /// indices, each facet's incident vertex on the supporting hyperplane,
    /// and closedness sum_k area_k normal_k = 0.
    pub fn validate(&self) -> Result<()> {
        if self.n_vertices() == 0 || self.facets.is_empty() {
            return Err(Error::InvalidPolytope("needs vertices and facets".into()));
        }
        let mut closure = vec![0.0; self.n];
        let mut total_area = 0.0;
        for (k, f) in self.facets.iter().enumerate() {
            if f.normal.len() != self.n {
                return Err(Error::InvalidPolytope(format!(
                    "facet {k} normal has wrong dimension"
                )));
            }
            if (norm(&f.normal) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidPolytope(format!(
                    "facet {k} normal is not unit: |u| = {}",
                    norm(&f.normal)
                )));
            }
            if !(f.area > 0.0) {
                return Err(Error::InvalidPolytope(format!(
                    "facet {k} has non-positive area {}",
                    f.area
                )));
            }
            if f.vertex >= self.n_vertices() {
                return Err(Error::InvalidPolytope(format!(
                    "facet {k} references vertex {} out of range",
                    f.vertex
                )));
            }
            let offset = dot(&f.normal, self.vertex(f.vertex));
            let support = self.support(&f.normal);
            if (support - offset).abs() > HULL_TOL * support.abs().max(1.0) {
                return Err(Error::InvalidPolytope(format!(
                    "facet {k}: incident vertex off the supporting hyperplane \
                     (offset {offset}, support {support})"
                )));
            }
            total_area += f.area;
            for (c, u) in closure.iter_mut().zip(&f.normal) {
                *c += f.area * u;
            }
        }
        let closure_norm = norm(&closure);
        if closure_norm > HULL_TOL * total_area.max(1.0) {
            return Err(Error::InvalidPolytope(format!(
                "surface-area measure not closed: |sum area*normal| = {closure_norm}"
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len() / self.n
    }

    pub fn vertex(&self, k: usize) -> &[f64] {
        &self.vertices[k * self.n..(k + 1) * self.n]
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// h(P, x) = max_k x . v_k.
    pub fn support(&self, x: &[f64]) -> f64 {
        (0..self.n_vertices())
            .map(|k| dot(x, self.vertex(k)))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Classical surface-area measure: atoms at facet normals weighted by
    /// facet areas. The even flag is set exactly when the facet data is
    /// origin-symmetric.
    pub fn surface_area_measure(&self) -> Result<DiscreteSphereMeasure> {
        DiscreteSphereMeasure::new(
            self.n,
            self.facets
                .iter()
                .map(|f| (f.normal.clone(), f.area))
                .collect(),
        )
    }

    /// L^p surface-area measure: weights area_k * h(P, u_k)^{1-p}.
    /// Requires the origin in the interior, i.e. h(P, u_k) > 0 on every
    /// facet normal.
    pub fn lp_surface_area_measure(&self, p: f64) -> Result<DiscreteSphereMeasure> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("p must be >= 1, got {p}")));
        }
        let mut atoms = Vec::with_capacity(self.facets.len());
        for (k, f) in self.facets.iter().enumerate() {
            let h = self.support(&f.normal);
            if !(h > 0.0) {
                return Err(Error::Domain(format!(
                    "origin not interior: facet {k} with normal {:?} has support {h}",
                    f.normal
                )));
            }
            atoms.push((f.normal.clone(), f.area * h.powf(1.0 - p)));
        }
        DiscreteSphereMeasure::new(self.n, atoms)
    }

    pub fn total_surface_area(&self) -> f64 {
        self.facets.iter().map(|f| f.area).sum()
    }

    /// Volume by the divergence identity (1/n) sum_k area_k (u_k . x_k)
    /// with x_k on facet k.
    pub fn volume(&self) -> f64 {
        let s: f64 = self
            .facets
            .iter()
            .map(|f| f.area * dot(&f.normal, self.vertex(f.vertex)))
            .sum();
        s / self.n as f64
    }

    /// Image A P under an invertible linear map: vertices map by A, facet
    /// normals by A^{-T} (renormalized), areas by |det A| |A^{-T} u|.
    pub fn linear_image(&self, a: &Matrix) -> Result<Polytope> {
        if a.n != self.n {
            return Err(Error::Domain("matrix dimension mismatch".into()));
        }
        let det = a.det().abs();
        if det <= 0.0 {
            return Err(Error::Domain("linear image needs an invertible matrix".into()));
        }
        let a_inv_t = a.inverse()?.transpose();
        let mut vertices = Vec::with_capacity(self.n_vertices());
        for k in 0..self.n_vertices() {
            vertices.push(a.matvec(self.vertex(k)));
        }
        let mut facets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut normal = a_inv_t.matvec(&f.normal);
            let stretch = normalize(&mut normal);
            facets.push(Facet {
                normal,
                area: f.area * det * stretch,
                vertex: f.vertex,
            });
        }
        Polytope::new(
            self.n,
            vertices.into_iter().collect(),
            facets,
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<Polytope> {
        if !(factor > 0.0) {
            return Err(Error::Domain(format!("scale must be positive, got {factor}")));
        }
        self.linear_image(&Matrix::diagonal(&vec![factor; self.n]))
    }

    // ----- bundled fixtures -----

    /// Cube [-1, 1]^n.
    pub fn cube(n: usize) -> Polytope {
        assert!(n >= 1 && n <= 20);
        let n_vertices = 1usize << n;
        let mut vertices = Vec::with_capacity(n_vertices);
        for code in 0..n_vertices {
            let v: Vec<f64> = (0..n)
                .map(|k| if code >> k & 1 == 1 { 1.0 } else { -1.0 })
                .collect();
            vertices.push(v);
        }
        let all_plus = n_vertices - 1;
        let area = 2f64.powi(n as i32 - 1);
        let mut facets = Vec::with_capacity(2 * n);
        for k in 0..n {
            for sign in [1.0, -1.0] {
                let mut normal = vec![0.0; n];
                normal[k] = sign;
                // all-plus vertex lies on +e_k facets; flip bit k for -e_k
                let vertex = if sign > 0.0 { all_plus } else { all_plus ^ (1 << k) };
                facets.push(Facet {
                    normal,
                    area,
                    vertex,
                });
            }
        }
        Polytope::new(n, vertices, facets).expect("cube fixture is consistent")
    }

    /// Cross-polytope conv{+-e_1, ..., +-e_n}.
    pub fn cross_polytope(n: usize) -> Polytope {
        assert!(n >= 2 && n <= 20);
        let mut vertices = Vec::with_capacity(2 * n);
        for k in 0..n {
            for sign in [1.0, -1.0] {
                let mut v = vec![0.0; n];
                v[k] = sign;
                vertices.push(v);
            }
        }
        // facet area: (n-1)-volume of conv{sigma_k e_k} = sqrt(n) / (n-1)!
        let mut fact = 1.0;
        for k in 1..n {
            fact *= k as f64;
        }
        let area = (n as f64).sqrt() / fact;
        let inv_sqrt_n = 1.0 / (n as f64).sqrt();
        let mut facets = Vec::with_capacity(1 << n);
        for code in 0..(1usize << n) {
            let normal: Vec<f64> = (0..n)
                .map(|k| if code >> k & 1 == 1 { inv_sqrt_n } else { -inv_sqrt_n })
                .collect();
            // incident vertex: sign_1 e_1 -> vertex index 0 or 1
            let vertex = if code & 1 == 1 { 0 } else { 1 };
            facets.push(Facet {
                normal,
                area,
                vertex,
            });
        }
        Polytope::new(n, vertices, facets).expect("cross-polytope fixture is consistent")
    }

    /// Regular tetrahedron with vertices (1,1,1), (1,-1,-1), (-1,1,-1),
    /// (-1,-1,1), centered at the origin.
    pub fn regular_simplex3() -> Polytope {
        let vertices = vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ];
        let s = 1.0 / 3f64.sqrt();
        let area = 2.0 * 3f64.sqrt();
        let facets = vec![
            // facet opposite vertex k has normal -v_k / sqrt(3)
            Facet {
                normal: vec![-s, -s, -s],
                area,
                vertex: 1,
            },
            Facet {
                normal: vec![-s, s, s],
                area,
                vertex: 0,
            },
            Facet {
                normal: vec![s, -s, s],
                area,
                vertex: 0,
            },
            Facet {
                normal: vec![s, s, -s],
                area,
                vertex: 0,
            },
        ];
        Polytope::new(3, vertices, facets).expect("simplex fixture is consistent")
    }

    /// Icosphere approximation of the unit ball in R^3: an icosahedron with
    /// `subdivisions` rounds of midpoint subdivision, vertices on the unit
    /// sphere. Subdivision s has 20 * 4^s facets (s = 3 gives 1280).
    pub fn ball_approx(subdivisions: usize) -> Polytope {
        assert!(subdivisions <= 6);
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, t, 0.0],
            [1.0, t, 0.0],
            [-1.0, -t, 0.0],
            [1.0, -t, 0.0],
            [0.0, -1.0, t],
            [0.0, 1.0, t],
            [0.0, -1.0, -t],
            [0.0, 1.0, -t],
            [t, 0.0, -1.0],
            [t, 0.0, 1.0],
            [-t, 0.0, -1.0],
            [-t, 0.0, 1.0],
        ];
        let mut vertices: Vec<Vec<f64>> = raw
            .iter()
            .map(|v| {
                let mut v = v.to_vec();
                normalize(&mut v);
                v
            })
            .collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..subdivisions {
            let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
            let mut next = Vec::with_capacity(faces.len() * 4);
            for f in &faces {
                let mut mids = [0usize; 3];
                for e in 0..3 {
                    let a = f[e];
                    let b = f[(e + 1) % 3];
                    let key = (a.min(b), a.max(b));
                    mids[e] = *midpoint.entry(key).or_insert_with(|| {
                        let mut m: Vec<f64> = vertices[a]
                            .iter()
                            .zip(&vertices[b])
                            .map(|(x, y)| x + y)
                            .collect();
                        normalize(&mut m);
                        vertices.push(m);
                        vertices.len() - 1
                    });
                }
                next.push([f[0], mids[0], mids[2]]);
                next.push([f[1], mids[1], mids[0]]);
                next.push([f[2], mids[2], mids[1]]);
                next.push([mids[0], mids[1], mids[2]]);
            }
            faces = next;
        }
        let facets = faces
            .iter()
            .map(|f| triangle_facet(&vertices, *f))
            .collect();
        Polytope::new(3, vertices, facets).expect("icosphere fixture is consistent")
    }

    /// Origin-symmetric zonotope sum_k [-g_k, g_k] in R^3 from generators in
    /// generic position. Facets are the parallelogram pairs of generator
    /// pairs; vertices are all sign combinations.
    pub fn zonotope3(generators: &[Vec<f64>]) -> Result<Polytope> {
        let m = generators.len();
        if m < 3 || m > 12 {
            return Err(Error::Config(format!(
                "zonotope needs 3..=12 generators, got {m}"
            )));
        }
        for g in generators {
            if g.len() != 3 {
                return Err(Error::Config("zonotope generators must be 3-dimensional".into()));
            }
        }
        let mut vertices = Vec::with_capacity(1 << m);
        for code in 0..(1usize << m) {
            let mut v = vec![0.0; 3];
            for (k, g) in generators.iter().enumerate() {
                let sign = if code >> k & 1 == 1 { 1.0 } else { -1.0 };
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += sign * gi;
                }
            }
            vertices.push(v);
        }
        let mut facets = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                let gi = &generators[i];
                let gj = &generators[j];
                let cross = [
                    gi[1] * gj[2] - gi[2] * gj[1],
                    gi[2] * gj[0] - gi[0] * gj[2],
                    gi[0] * gj[1] - gi[1] * gj[0],
                ];
                let cross_norm = norm(&cross);
                if cross_norm < 1e-9 {
                    return Err(Error::Config(format!(
                        "generators {i} and {j} are parallel"
                    )));
                }
                for orient in [1.0, -1.0] {
                    let normal: Vec<f64> = cross.iter().map(|c| orient * c / cross_norm).collect();
                    // vertex with sign(g_k . normal) for k outside the pair,
                    // +1 for i and j (all four corners work; pick one)
                    let mut code = (1usize << i) | (1 << j);
                    for (k, g) in generators.iter().enumerate() {
                        if k == i || k == j {
                            continue;
                        }
                        let d = dot(g, &normal);
                        if d.abs() < 1e-9 {
                            return Err(Error::Config(format!(
                                "generators not in generic position: g_{k} orthogonal \
                                 to the ({i},{j}) facet normal"
                            )));
                        }
                        if d > 0.0 {
                            code |= 1 << k;
                        }
                    }
                    facets.push(Facet {
                        normal,
                        area: 4.0 * cross_norm,
                        vertex: code,
                    });
                }
            }
        }
        Polytope::new(3, vertices, facets)
    }
}

fn triangle_facet(vertices: &[Vec<f64>], f: [usize; 3]) -> Facet {
    let a = &vertices[f[0]];
    let b = &vertices[f[1]];
    let c = &vertices[f[2]];
    let ab: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let ac: Vec<f64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
    let mut normal = vec![
        ab[1] * ac[2] - ab[2] * ac[1],
        ab[2] * ac[0] - ab[0] * ac[2],
        ab[0] * ac[1] - ab[1] * ac[0],
    ];
    let cross_norm = normalize(&mut normal);
    // outward orientation relative to the origin-centered body
    if dot(&normal, a) < 0.0 {
        for x in normal.iter_mut() {
            *x = -*x;
        }
    }
    Facet {
        normal,
        area: 0.5 * cross_norm,
        vertex: f[0],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cube_fixture() {
        let cube = Polytope::cube(3);
        assert_eq!(cube.n_vertices(), 8);
        assert_eq!(cube.facets().len(), 6);
        assert!((cube.volume() - 8.0).abs() < 1e-12);
        assert!((cube.total_surface_area() - 24.0).abs() < 1e-12);
        let sam = cube.surface_area_measure().unwrap();
        assert!(sam.is_even());
        for w in (0..sam.len()).map(|k| sam.weight(k)) {
            assert!((w - 4.0).abs() < 1e-12);
        }
        assert!(norm(&sam.weighted_direction_sum()) < 1e-12);
    }

    #[test]
    fn cube_support_is_l1_norm() {
        let cube = Polytope::cube(3);
        let x = [0.3, -1.5, 2.0];
        assert!((cube.support(&x) - (0.3 + 1.5 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn cross_polytope_fixture() {
        let cp = Polytope::cross_polytope(3);
        assert_eq!(cp.facets().len(), 8);
        assert!((cp.volume() - 4.0 / 3.0).abs() < 1e-12);
        let sam = cp.surface_area_measure().unwrap();
        assert!(sam.is_even());
    }

    #[test]
    fn simplex_fixture_matches_triangle_oracle() {
        let s = Polytope::regular_simplex3();
        // direct triangle-area computation for each face
        let faces = [[1usize, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
        let mut oracle_total = 0.0;
        for f in faces {
            let a = s.vertex(f[0]);
            let b = s.vertex(f[1]);
            let c = s.vertex(f[2]);
            let ab: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
            let ac: Vec<f64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
            let cross = [
                ab[1] * ac[2] - ab[2] * ac[1],
                ab[2] * ac[0] - ab[0] * ac[2],
                ab[0] * ac[1] - ab[1] * ac[0],
            ];
            oracle_total += 0.5 * norm(&cross);
        }
        assert!((s.total_surface_area() - oracle_total).abs() < 1e-12);
        let sam = s.surface_area_measure().unwrap();
        assert_eq!(sam.len(), 4);
        assert!(!sam.is_even());
        let w0 = sam.weight(0);
        for k in 1..4 {
            assert!((sam.weight(k) - w0).abs() < 1e-12);
        }
        // determinant oracle for the volume
        let det_vol = {
            let a = s.vertex(0);
            let cols: Vec<Vec<f64>> = (1..4)
                .map(|k| s.vertex(k).iter().zip(a).map(|(x, y)| x - y).collect())
                .collect();
            let m = Matrix::from_rows(&[
                vec![cols[0][0], cols[1][0], cols[2][0]],
                vec![cols[0][1], cols[1][1], cols[2][1]],
                vec![cols[0][2], cols[1][2], cols[2][2]],
            ])
            .unwrap();
            m.det().abs() / 6.0
        };
        assert!((s.volume() - det_vol).abs() < 1e-12);
    }

    #[test]
    fn lp_measure_matches_classical_at_p_one() {
        let cube = Polytope::cube(3);
        let s1 = cube.lp_surface_area_measure(1.0).unwrap();
        let s = cube.surface_area_measure().unwrap();
        for k in 0..s.len() {
            assert!((s1.weight(k) - s.weight(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn lp_measure_cube_p2() {
        // h = 1 on cube facet normals, so weights stay 4
        let cube = Polytope::cube(3);
        let s2 = cube.lp_surface_area_measure(2.0).unwrap();
        for k in 0..s2.len() {
            assert!((s2.weight(k) - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lp_measure_scaling_law() {
        // S_p(lambda K) = lambda^{n-p} S_p(K)
        let cube = Polytope::cube(3);
        for p in [1.0, 1.5, 2.0] {
            for lambda in [0.5, 2.0] {
                let scaled = cube.scaled(lambda).unwrap();
                let lhs = scaled.lp_surface_area_measure(p).unwrap();
                let rhs = cube.lp_surface_area_measure(p).unwrap();
                let factor = lambda.powf(3.0 - p);
                for k in 0..rhs.len() {
                    assert!(
                        (lhs.weight(k) - factor * rhs.weight(k)).abs()
                            < 1e-9 * rhs.weight(k).abs(),
                        "p={p}, lambda={lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn lp_measure_requires_origin_interior() {
        // shift the cube so the origin leaves the interior
        let cube = Polytope::cube(3);
        let shifted: Vec<Vec<f64>> = (0..cube.n_vertices())
            .map(|k| {
                let mut v = cube.vertex(k).to_vec();
                v[0] += 5.0;
                v
            })
            .collect();
        let p = Polytope::new(3, shifted, cube.facets().to_vec()).unwrap();
        let err = p.lp_surface_area_measure(2.0).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("origin not interior")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn volume_scaling() {
        let cube = Polytope::cube(3);
        let scaled = cube.scaled(0.5).unwrap();
        assert!((scaled.volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ball_approx_geometry() {
        let ball = Polytope::ball_approx(3);
        assert_eq!(ball.facets().len(), 1280);
        let vol = ball.volume();
        let area = ball.total_surface_area();
        assert!((vol - 4.0 * PI / 3.0).abs() / (4.0 * PI / 3.0) < 0.01, "vol {vol}");
        assert!((area - 4.0 * PI).abs() / (4.0 * PI) < 0.01, "area {area}");
        assert!(ball.surface_area_measure().unwrap().is_even());
    }

    #[test]
    fn linear_image_preserves_consistency() {
        let a = Matrix::from_rows(&[
            vec![2.0, 0.3, 0.0],
            vec![0.0, 1.0, -0.2],
            vec![0.1, 0.0, 0.5],
        ])
        .unwrap();
        let cube = Polytope::cube(3);
        let image = cube.linear_image(&a).unwrap();
        assert!((image.volume() - 8.0 * a.det().abs()).abs() < 1e-9);
        // support transforms as h(AK, x) = h(K, A^T x)
        let x = [0.7, -0.1, 0.4];
        let atx = a.matvec_t(&x);
        assert!((image.support(&x) - cube.support(&atx)).abs() < 1e-12);
    }

    #[test]
    fn zonotope_volume_matches_determinant_formula() {
        let gens = vec![
            vec![1.0, 0.1, 0.0],
            vec![-0.2, 1.0, 0.3],
            vec![0.0, -0.3, 0.8],
            vec![0.5, 0.4, -0.6],
        ];
        let z = Polytope::zonotope3(&gens).unwrap();
        // vol(sum [-g_k, g_k]) = 8 sum_{i<j<k} |det(g_i, g_j, g_k)|
        let mut expected = 0.0;
        let m = gens.len();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let mat = Matrix::from_rows(&[
                        vec![gens[i][0], gens[j][0], gens[k][0]],
                        vec![gens[i][1], gens[j][1], gens[k][1]],
                        vec![gens[i][2], gens[j][2], gens[k][2]],
                    ])
                    .unwrap();
                    expected += mat.det().abs();
                }
            }
        }
        expected *= 8.0;
        assert!(
            (z.volume() - expected).abs() < 1e-9 * expected,
            "{} vs {expected}",
            z.volume()
        );
        // support of a zonotope is sum_k |g_k . x|
        let x = [0.3, -0.9, 0.5];
        let support_formula: f64 = gens.iter().map(|g| dot(g, &x).abs()).sum();
        assert!((z.support(&x) - support_formula).abs() < 1e-12);
    }

    #[test]
    fn validator_rejects_inconsistent_facets() {
        let cube = Polytope::cube(3);
        let mut facets = cube.facets().to_vec();
        facets[0].area = 7.0;
        let vertices: Vec<Vec<f64>> = (0..cube.n_vertices())
            .map(|k| cube.vertex(k).to_vec())
            .collect();
        assert!(Polytope::new(3, vertices, facets).is_err());
    }
}
