//! The five graph families, their closed-form parameters, explicit builds and
//! the counting oracle that measures `(v, k, λ, μ)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::geometry::{canonical_space, enumerate_vertices, FormModel, Point, Space};
use crate::gf::{prime_power, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Orthogonality graph on one square class of nonsingular points, odd
    /// dimension, q in {3, 5}.
    NoPerp,
    /// Orthogonality graph on one Q-value class, even dimension, q = 3.
    NoEven3,
    /// Orthogonality graph on all nonsingular points, even dimension, q = 2.
    NoEven2,
    /// Tangency graph on one square class, odd dimension, q odd.
    NoOdd,
    /// Tangency graph on nonisotropic points of a hermitian space, q even.
    Nu,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::NoPerp,
        Family::NoEven3,
        Family::NoEven2,
        Family::NoOdd,
        Family::Nu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::NoPerp => "no-perp",
            Family::NoEven3 => "no-even3",
            Family::NoEven2 => "no-even2",
            Family::NoOdd => "no-odd",
            Family::Nu => "nu",
        }
    }

    /// Adjacency is orthogonality (as opposed to tangency).
    pub fn is_orthogonality(self) -> bool {
        matches!(self, Family::NoPerp | Family::NoEven3 | Family::NoEven2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Coordinate model: the standard one used for totally singular flags, or
/// the split `(x, y[, z])` model the group actions are written in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coords {
    #[default]
    Standard,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    pub q: u32,
    pub r: u32,
    pub eps: Option<i8>,
    #[serde(default)]
    pub coords: Coords,
    /// Q-value selecting the vertex class of `no-even3` (1 or 2).
    #[serde(default = "one")]
    pub part: u32,
}

fn one() -> u32 {
    1
}

impl GraphSpec {
    pub fn new(family: Family, q: u32, r: u32, eps: Option<i8>) -> Result<Self> {
        let spec = GraphSpec {
            family,
            q,
            r,
            eps,
            coords: Coords::Standard,
            part: 1,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_coords(mut self, coords: Coords) -> Result<Self> {
        self.coords = coords;
        self.validate()?;
        Ok(self)
    }

    pub fn with_part(mut self, part: u32) -> Result<Self> {
        self.part = part;
        self.validate()?;
        Ok(self)
    }

    pub fn eps_value(&self) -> i64 {
        i64::from(self.eps.unwrap_or(0))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::UnsupportedParameters(msg));
        let Some((p, _)) = prime_power(self.q) else {
            return bad(format!("q = {} is not a prime power", self.q));
        };
        match (self.family, self.eps) {
            (Family::Nu, None) => {}
            (Family::Nu, Some(_)) => return bad("nu takes no eps".into()),
            (_, Some(1 | -1)) => {}
            (_, _) => return bad(format!("{} needs eps = +1 or -1", self.family)),
        }
        match self.family {
            Family::NoPerp if !(self.q == 3 || self.q == 5) => {
                return bad(format!("no-perp needs q in {{3, 5}}, got {}", self.q))
            }
            Family::NoEven3 if self.q != 3 => return bad(format!("no-even3 needs q = 3, got {}", self.q)),
            Family::NoEven2 if self.q != 2 => return bad(format!("no-even2 needs q = 2, got {}", self.q)),
            Family::NoOdd if p == 2 => return bad(format!("no-odd needs odd q, got {}", self.q)),
            Family::Nu if p != 2 => return bad(format!("nu needs even q, got {}", self.q)),
            Family::Nu if self.r < 3 || self.r % 2 == 0 => {
                return bad(format!("nu needs odd r >= 3, got {}", self.r))
            }
            _ => {}
        }
        let min_r = match self.family {
            Family::NoPerp | Family::NoOdd => 1,
            Family::NoEven3 | Family::NoEven2 => 2,
            Family::Nu => 3,
        };
        if self.r < min_r {
            return bad(format!("{} needs r >= {min_r}, got {}", self.family, self.r));
        }
        if self.part != 1 && !(self.family == Family::NoEven3 && self.part == 2) {
            return bad(format!("part = {} is only meaningful as 1 or 2 for no-even3", self.part));
        }
        if self.coords == Coords::Split {
            let ok = match self.family {
                Family::NoPerp | Family::NoOdd => true,
                Family::NoEven3 | Family::NoEven2 => self.eps == Some(1),
                Family::Nu => false,
            };
            if !ok {
                return bad(format!("no split coordinate model for {self}"));
            }
        }
        Ok(())
    }

    pub fn form_model(&self) -> Result<FormModel> {
        let split = self.coords == Coords::Split;
        match self.family {
            Family::NoPerp | Family::NoOdd if split => Ok(FormModel::ParabolicSplit),
            Family::NoPerp | Family::NoOdd => Ok(FormModel::Parabolic),
            Family::NoEven3 | Family::NoEven2 => match (self.eps, split) {
                (Some(1), false) => Ok(FormModel::Hyperbolic),
                (Some(1), true) => Ok(FormModel::HyperbolicSplit),
                (Some(-1), false) => Ok(FormModel::Elliptic),
                _ => Err(Error::UnsupportedParameters(format!("no quadratic model for {self}"))),
            },
            Family::Nu => Err(Error::UnsupportedParameters("nu lives on a hermitian space".into())),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} q={} r={}", self.family, self.q, self.r)?;
        if let Some(e) = self.eps {
            write!(f, " eps={}", if e > 0 { "+1" } else { "-1" })?;
        }
        if self.coords == Coords::Split {
            f.write_str(" coords=split")?;
        }
        if self.part != 1 {
            write!(f, " part={}", self.part)?;
        }
        Ok(())
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Parses the `Display` form, e.g. `no-odd q=5 r=2 eps=-1 coords=split`.
    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let family: Family = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty graph spec".into()))?
            .parse()?;
        let (mut q, mut r, mut eps) = (None, None, None);
        let mut coords = Coords::Standard;
        let mut part = 1;
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
            let num = |v: &str| v.parse::<i64>().map_err(|_| Error::Parse(format!("bad number {v:?}")));
            match key {
                "q" => q = Some(num(value)? as u32),
                "r" => r = Some(num(value)? as u32),
                "eps" => eps = Some(num(value)? as i8),
                "part" => part = num(value)? as u32,
                "coords" => {
                    coords = match value {
                        "split" => Coords::Split,
                        "standard" => Coords::Standard,
                        _ => return Err(Error::Parse(format!("unknown coords {value:?}"))),
                    }
                }
                _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse("missing q".into()))?;
        let r = r.ok_or_else(|| Error::Parse("missing r".into()))?;
        GraphSpec::new(family, q, r, eps)?
            .with_coords(coords)?
            .with_part(part)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub e_plus: i64,
    pub e_minus: i64,
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self> {
        let (e_plus, e_minus) = srg_eigenvalues(v, k, lambda, mu)?;
        Ok(SrgParams {
            v,
            k,
            lambda,
            mu,
            e_plus,
            e_minus,
        })
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.v, self.k, self.lambda, self.mu)
    }
}

/// Roots of `x^2 - (λ - μ) x - (k - μ)`, larger first.
pub fn srg_eigenvalues(_v: u64, k: u64, lambda: u64, mu: u64) -> Result<(i64, i64)> {
    let b = lambda as i64 - mu as i64;
    let c = k as i64 - mu as i64;
    let disc = b * b + 4 * c;
    if disc < 0 {
        return Err(Error::IrrationalEigenvalues { discriminant: disc });
    }
    let s = isqrt(disc as u64) as i64;
    if s * s != disc || (b + s) % 2 != 0 {
        return Err(Error::IrrationalEigenvalues { discriminant: disc });
    }
    Ok(((b + s) / 2, (b - s) / 2))
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn ipow(b: i64, e: i64) -> i64 {
    assert!(e >= 0, "negative exponent {e}");
    b.pow(e as u32)
}

/// `(v, k, λ, μ)` from the closed-form parameter formulas of each family.
pub fn expected_params(spec: &GraphSpec) -> Result<SrgParams> {
    spec.validate()?;
    let q = i64::from(spec.q);
    let r = i64::from(spec.r);
    let e = spec.eps_value();
    let (v, k, l, m) = match spec.family {
        Family::NoPerp => {
            let lambda = if spec.q == 3 {
                ipow(3, r - 1) * (ipow(3, r - 1) - e) / 2
            } else {
                ipow(5, r - 1) * (ipow(5, r - 1) + e) / 2
            };
            (
                ipow(q, r) * (ipow(q, r) + e) / 2,
                ipow(q, r - 1) * (ipow(q, r) - e) / 2,
                lambda,
                ipow(q, r - 1) * (ipow(q, r - 1) - e) / 2,
            )
        }
        Family::NoEven3 => (
            ipow(3, r - 1) * (ipow(3, r) - e) / 2,
            ipow(3, r - 1) * (ipow(3, r - 1) - e) / 2,
            ipow(3, r - 2) * (ipow(3, r - 1) + e) / 2,
            ipow(3, r - 1) * (ipow(3, r - 2) - e) / 2,
        ),
        Family::NoEven2 => (
            ipow(2, 2 * r - 1) - e * ipow(2, r - 1),
            ipow(2, 2 * r - 2) - 1,
            ipow(2, 2 * r - 3) - 2,
            ipow(2, 2 * r - 3) + e * ipow(2, r - 2),
        ),
        Family::NoOdd => (
            ipow(q, r) * (ipow(q, r) + e) / 2,
            (ipow(q, r - 1) + e) * (ipow(q, r) - e),
            2 * (ipow(q, 2 * r - 2) - 1) + e * ipow(q, r - 1) * (q - 1),
            2 * ipow(q, r - 1) * (ipow(q, r - 1) + e),
        ),
        Family::Nu => (
            ipow(q, 2 * r - 1) * (ipow(q, 2 * r) - 1) / (q + 1),
            (ipow(q, 2 * r - 1) + 1) * (ipow(q, 2 * r - 2) - 1),
            ipow(q, 4 * r - 5) * (q + 1) - ipow(q, 2 * r - 2) * (q - 1) - 2,
            ipow(q, 2 * r - 3) * (q + 1) * (ipow(q, 2 * r - 2) - 1),
        ),
    };
    if k <= 0 || k >= v - 1 || l < 0 || m < 0 {
        return Err(Error::UnsupportedParameters(format!(
            "{spec} is a degenerate instance (v={v}, k={k}, lambda={l}, mu={m})"
        )));
    }
    SrgParams::new(v as u64, k as u64, l as u64, m as u64)
}

/// Size limits on builds. The defaults keep every build at desk scale;
/// `POLAR_SRG_NO_CAPS` in the environment lifts them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub enforce: bool,
    pub max_vertices: u64,
}

pub const CAPS_ENV: &str = "POLAR_SRG_NO_CAPS";

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enforce: true,
            max_vertices: 20_000,
        }
    }
}

impl Caps {
    pub fn off() -> Self {
        Caps {
            enforce: false,
            ..Caps::default()
        }
    }

    pub fn from_env() -> Self {
        if std::env::var_os(CAPS_ENV).is_some() {
            Caps::off()
        } else {
            Caps::default()
        }
    }

    pub fn check(&self, spec: &GraphSpec) -> Result<()> {
        spec.validate()?;
        if !self.enforce {
            return Ok(());
        }
        let max_r = match (spec.family, spec.q) {
            (Family::Nu, 2) => 3,
            (Family::Nu, _) => 0,
            (_, 2 | 3) => 4,
            (_, 5 | 7) => 3,
            _ => 2,
        };
        if spec.r > max_r {
            return Err(Error::UnsupportedParameters(format!(
                "{spec} exceeds the size cap (r <= {max_r} at q = {}); set {CAPS_ENV} to override",
                spec.q
            )));
        }
        let v = expected_params(spec)?.v;
        if v > self.max_vertices {
            return Err(Error::UnsupportedParameters(format!(
                "{spec} has {v} vertices, above the cap {}; set {CAPS_ENV} to override",
                self.max_vertices
            )));
        }
        Ok(())
    }
}

/// An explicit graph: canonical vertex list plus dense adjacency.
pub struct Graph {
    spec: GraphSpec,
    space: Space,
    vertices: Vec<Point>,
    index: HashMap<Point, usize>,
    adj: BitMatrix,
    params: OnceLock<Result<SrgParams>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("spec", &self.spec)
            .field("v", &self.vertices.len())
            .finish()
    }
}

impl Graph {
    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn v(&self) -> usize {
        self.vertices.len()
    }

    pub fn adj(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the vertex spanned by `v` (any nonzero representative).
    pub fn index_of_vector(&self, v: &[Elem]) -> Option<usize> {
        self.space.normalize(v).and_then(|p| self.index_of(&p))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    /// Measured parameters, computed once.
    pub fn params(&self) -> Result<SrgParams> {
        self.params.get_or_init(|| measure_matrix(&self.adj)).clone()
    }
}

/// Builds the graph of `spec` in its canonical coordinate model.
pub fn build_graph(spec: &GraphSpec) -> Result<Graph> {
    let space = canonical_space(spec)?;
    let vertices = enumerate_vertices(spec, &space)?;
    let adj = fill_adjacency(spec, &space, &vertices);
    let index = vertices.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(Graph {
        spec: *spec,
        space,
        vertices,
        index,
        adj,
        params: OnceLock::new(),
    })
}

fn fill_adjacency(spec: &GraphSpec, space: &Space, vertices: &[Point]) -> BitMatrix {
    let n = vertices.len();
    let stride = n.div_ceil(64);
    let upper_row = |i: usize, adjacent: &dyn Fn(usize, usize) -> bool| {
        let mut row = vec![0u64; stride];
        for j in i + 1..n {
            if adjacent(i, j) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        row
    };
    let rows: Vec<Vec<u64>> = match space {
        Space::Quadratic(form) => {
            let f = form.field();
            let dim = form.dim();
            let values: Vec<Elem> = vertices.iter().map(|p| form.value(&p.0)).collect();
            let images: Vec<Vec<Elem>> = vertices.iter().map(|p| form.polar_image(&p.0)).collect();
            let tangency = spec.family == Family::NoOdd;
            let four = f.from_int(4);
            if f.degree() == 1 {
                // prime field: element indices are the residues themselves
                let p = u64::from(f.characteristic());
                let xs: Vec<u64> = vertices.iter().flat_map(|v| v.0.iter().map(|e| u64::from(e.index()))).collect();
                let ims: Vec<u64> = images.iter().flat_map(|v| v.iter().map(|e| u64::from(e.index()))).collect();
                let qs: Vec<u64> = values.iter().map(|e| u64::from(e.index())).collect();
                let four = u64::from(four.index());
                let adjacent = move |i: usize, j: usize| {
                    let a = &ims[i * dim..(i + 1) * dim];
                    let b = &xs[j * dim..(j + 1) * dim];
                    let bij = a.iter().zip(b).map(|(x, y)| x * y).sum::<u64>() % p;
                    if tangency {
                        bij * bij % p == four * qs[i] % p * qs[j] % p
                    } else {
                        bij == 0
                    }
                };
                (0..n).into_par_iter().map(|i| upper_row(i, &adjacent)).collect()
            } else {
                let adjacent = |i: usize, j: usize| {
                    let bij = crate::geometry::dot(f, &images[i], &vertices[j].0);
                    if tangency {
                        f.mul(bij, bij) == f.mul(four, f.mul(values[i], values[j]))
                    } else {
                        bij.is_zero()
                    }
                };
                (0..n).into_par_iter().map(|i| upper_row(i, &adjacent)).collect()
            }
        }
        Space::Hermitian(h) => {
            let mid = h.mid();
            let emb = h.base_in_mid();
            let norms: Vec<Elem> = vertices.iter().map(|p| h.norm_form(&p.0)).collect();
            let q1 = u64::from(h.q()) + 1;
            let adjacent = |i: usize, j: usize| {
                let hv = h.form(&vertices[i].0, &vertices[j].0);
                let rhs = emb
                    .embed(h.base().mul(norms[i], norms[j]))
                    .expect("base field element");
                mid.pow(hv, q1) == rhs
            };
            (0..n).into_par_iter().map(|i| upper_row(i, &adjacent)).collect()
        }
    };
    let mut adj = BitMatrix::from_rows(n, rows);
    adj.mirror_upper();
    adj
}

/// Counts `v`, the common degree and the common λ and μ, failing on the
/// first vertex or pair (in index order) that breaks regularity.
pub fn measure_params(g: &Graph) -> Result<SrgParams> {
    measure_matrix(g.adj())
}

pub fn measure_matrix(adj: &BitMatrix) -> Result<SrgParams> {
    let n = adj.n();
    if n == 0 {
        return Err(Error::Invariant("empty graph".into()));
    }
    let k = adj.degree(0);
    if let Some(i) = (0..n).find(|&i| adj.degree(i) != k) {
        return Err(Error::NotRegular {
            vertex: i,
            degree: adj.degree(i),
            expected: k,
        });
    }
    let first = |want: bool| -> Option<(usize, usize)> {
        (0..n).find_map(|i| ((i + 1)..n).find(|&j| adj.get(i, j) == want).map(|j| (i, j)))
    };
    let lambda = first(true).map_or(0, |(i, j)| adj.common(i, j));
    let mu = first(false).map_or(0, |(i, j)| adj.common(i, j));
    let offender = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n).find_map(|j| {
                let adjacent = adj.get(i, j);
                let expected = if adjacent { lambda } else { mu };
                let count = adj.common(i, j);
                (count != expected).then_some(Error::NotStronglyRegular {
                    a: i,
                    b: j,
                    adjacent,
                    count,
                    expected,
                })
            })
        })
        .find_first(Option::is_some)
        .flatten();
    if let Some(err) = offender {
        return Err(err);
    }
    SrgParams::new(n as u64, k, lambda, mu)
}

/// Number of singular (resp. isotropic) points on the line through two
/// vertices; a line is tangent when this is 1.
pub fn tangent_points_on_line(g: &Graph, i: usize, j: usize) -> usize {
    g.space().tangent_points_on_line(&g.vertices()[i], &g.vertices()[j])
}

/// Whether `b`'s adjacency is the off-diagonal complement of `a`'s on the
/// same vertex list.
pub fn is_complement(a: &Graph, b: &Graph) -> bool {
    a.vertices() == b.vertices()
        && (0..a.v()).all(|i| (0..a.v()).all(|j| i == j || a.adjacent(i, j) != b.adjacent(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, q: u32, r: u32, eps: Option<i8>) -> GraphSpec {
        GraphSpec::new(f, q, r, eps).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(srg_eigenvalues(10, 3, 0, 1).unwrap(), (1, -2));
        assert_eq!(srg_eigenvalues(325, 60, 15, 10).unwrap(), (10, -5));
        assert_eq!(srg_eigenvalues(672, 495, 366, 360).unwrap(), (15, -9));
        // conference graph on 5 vertices has irrational eigenvalues
        assert!(matches!(
            srg_eigenvalues(5, 2, 0, 1),
            Err(Error::IrrationalEigenvalues { discriminant: 5 })
        ));
    }

    #[test]
    fn expected_examples() {
        let p = expected_params(&spec(Family::NoPerp, 5, 2, Some(1))).unwrap();
        assert_eq!(p.tuple(), (325, 60, 15, 10));
        let p = expected_params(&spec(Family::NoOdd, 5, 2, Some(-1))).unwrap();
        assert_eq!(p.tuple(), (300, 104, 28, 40));
        let p = expected_params(&spec(Family::NoEven3, 3, 3, Some(1))).unwrap();
        assert_eq!(p.tuple(), (117, 36, 15, 9));
        let p = expected_params(&spec(Family::Nu, 2, 3, None)).unwrap();
        assert_eq!(p.tuple(), (672, 495, 366, 360));
    }

    #[test]
    fn eigenvalue_relations_on_formulas() {
        for s in [
            spec(Family::NoPerp, 3, 2, Some(-1)),
            spec(Family::NoEven2, 2, 4, Some(1)),
            spec(Family::NoOdd, 7, 2, Some(1)),
            spec(Family::NoEven3, 3, 2, Some(-1)),
        ] {
            let p = expected_params(&s).unwrap();
            assert_eq!(p.e_plus * p.e_minus, p.mu as i64 - p.k as i64);
            assert_eq!(p.e_plus + p.e_minus, p.lambda as i64 - p.mu as i64);
        }
    }

    #[test]
    fn validation() {
        assert!(GraphSpec::new(Family::NoPerp, 7, 2, Some(1)).is_err());
        assert!(GraphSpec::new(Family::Nu, 2, 2, None).is_err());
        assert!(GraphSpec::new(Family::Nu, 2, 3, Some(1)).is_err());
        assert!(GraphSpec::new(Family::NoEven2, 2, 1, Some(1)).is_err());
        assert!(GraphSpec::new(Family::NoOdd, 4, 2, Some(1)).is_err());
        let s = spec(Family::NoEven2, 2, 2, Some(-1));
        assert!(s.with_coords(Coords::Split).is_err());
        assert!(spec(Family::NoEven2, 2, 2, Some(1)).with_part(2).is_err());
    }

    #[test]
    fn spec_text_roundtrip() {
        let s = spec(Family::NoEven3, 3, 3, Some(1))
            .with_coords(Coords::Split)
            .unwrap()
            .with_part(2)
            .unwrap();
        assert_eq!(s.to_string(), "no-even3 q=3 r=3 eps=+1 coords=split part=2");
        assert_eq!(s.to_string().parse::<GraphSpec>().unwrap(), s);
        let n = spec(Family::Nu, 2, 3, None);
        assert_eq!(n.to_string().parse::<GraphSpec>().unwrap(), n);
    }

    #[test]
    fn caps() {
        let caps = Caps::default();
        assert!(caps.check(&spec(Family::NoEven2, 2, 5, Some(1))).is_err());
        assert!(caps.check(&spec(Family::NoEven2, 2, 4, Some(1))).is_ok());
        assert!(caps.check(&spec(Family::NoOdd, 7, 3, Some(1))).is_err());
        assert!(Caps::off().check(&spec(Family::NoEven2, 2, 5, Some(1))).is_ok());
    }

    #[test]
    fn petersen_and_k33() {
        let g = build_graph(&spec(Family::NoEven2, 2, 2, Some(-1))).unwrap();
        assert_eq!(measure_params(&g).unwrap().tuple(), (10, 3, 0, 1));
        let g = build_graph(&spec(Family::NoEven2, 2, 2, Some(1))).unwrap();
        let p = measure_params(&g).unwrap();
        assert_eq!(p.tuple(), (6, 3, 0, 3));
        assert_eq!((p.e_plus, p.e_minus), (0, -3));
    }

    #[test]
    fn broken_petersen_is_rejected() {
        let g = build_graph(&spec(Family::NoEven2, 2, 2, Some(-1))).unwrap();
        let mut adj = g.adj().clone();
        let j = adj.row_ones(0).next().unwrap();
        adj.clear(0, j);
        adj.clear(j, 0);
        // vertex 0 now has degree 2, so the first intact vertex is reported
        assert!(matches!(
            measure_matrix(&adj),
            Err(Error::NotRegular { degree: 3, expected: 2, .. })
        ));
    }

    #[test]
    fn non_strongly_regular_is_reported() {
        // the 6-cycle is regular but not strongly regular
        let mut adj = BitMatrix::new(6);
        for i in 0..6 {
            adj.set(i, (i + 1) % 6);
            adj.set((i + 1) % 6, i);
        }
        assert!(matches!(
            measure_matrix(&adj),
            Err(Error::NotStronglyRegular { a: 0, b: 3, adjacent: false, count: 0, expected: 1 })
        ));
    }

    #[test]
    fn small_builds_match_formulas() {
        for s in [
            spec(Family::NoPerp, 3, 2, Some(1)),
            spec(Family::NoPerp, 3, 2, Some(-1)),
            spec(Family::NoPerp, 5, 2, Some(-1)),
            spec(Family::NoEven3, 3, 2, Some(1)),
            spec(Family::NoEven3, 3, 2, Some(-1)),
            spec(Family::NoEven2, 2, 3, Some(-1)),
            spec(Family::NoOdd, 3, 2, Some(-1)),
            spec(Family::NoOdd, 5, 1, Some(1)),
        ] {
            let g = build_graph(&s).unwrap();
            assert_eq!(measure_params(&g).unwrap(), expected_params(&s).unwrap(), "{s}");
            assert!(g.adj().is_symmetric() && g.adj().has_zero_diagonal());
        }
    }

    #[test]
    fn split_models_give_same_parameters() {
        for s in [
            spec(Family::NoPerp, 3, 2, Some(1)),
            spec(Family::NoOdd, 5, 2, Some(-1)),
            spec(Family::NoEven2, 2, 3, Some(1)),
        ] {
            let split = s.with_coords(Coords::Split).unwrap();
            let g = build_graph(&split).unwrap();
            assert_eq!(measure_params(&g).unwrap(), expected_params(&s).unwrap(), "{split}");
        }
    }

    #[test]
    fn both_no_even3_parts_agree() {
        let s = spec(Family::NoEven3, 3, 3, Some(-1));
        let a = measure_params(&build_graph(&s).unwrap()).unwrap();
        let b = measure_params(&build_graph(&s.with_part(2).unwrap()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tangency_matches_line_count_q5_r1() {
        let g = build_graph(&spec(Family::NoOdd, 5, 1, Some(1))).unwrap();
        for i in 0..g.v() {
            for j in i + 1..g.v() {
                assert_eq!(g.adjacent(i, j), tangent_points_on_line(&g, i, j) == 1);
            }
        }
    }

    #[test]
    fn orthogonal_pair_line_through_singular_point() {
        // at q = 5, -1 is a square, so Q(lx + y) = l^2 Q(x) + Q(y) has two roots
        let g = build_graph(&spec(Family::NoPerp, 5, 2, Some(1))).unwrap();
        for i in (0..g.v()).step_by(13) {
            for j in g.adj().row_ones(i) {
                assert_eq!(tangent_points_on_line(&g, i, j), 2);
            }
        }
    }

    #[test]
    fn complement_at_q3() {
        for eps in [1, -1] {
            let a = build_graph(&spec(Family::NoPerp, 3, 2, Some(eps))).unwrap();
            let b = build_graph(&spec(Family::NoOdd, 3, 2, Some(eps))).unwrap();
            assert!(is_complement(&a, &b));
        }
    }
}
