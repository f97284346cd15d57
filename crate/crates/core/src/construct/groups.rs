//! The isometry subgroups K (odd dimension, split parabolic model), L
//! (hyperbolic split model) and G (hermitian model), and their orbits on
//! the vertex set.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{expected, Expected, Provenance, VertexSet};
use crate::error::{Error, Result};
use crate::geometry::{all_vectors, normalize_linear, rref, HermitianSpace, Point};
use crate::gf::{Elem, Field};
use crate::srg::{Coords, Family, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    K,
    L,
    G,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::K => "k",
            GroupKind::L => "l",
            GroupKind::G => "g",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(GroupKind::K),
            "l" => Ok(GroupKind::L),
            "g" => Ok(GroupKind::G),
            other => Err(Error::Parse(format!("unknown group kind {other:?}"))),
        }
    }
}

pub type Matrix = Vec<Vec<Elem>>;

pub fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Elem::ZERO, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(f: &Field, v: &[Elem], m: &Matrix) -> Vec<Elem> {
    mat_mul(f, &vec![v.to_vec()], m).remove(0)
}

pub fn mat_inv(f: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
            r
        })
        .collect();
    let (red, pivots) = rref(f, &aug);
    (pivots.len() == n && pivots[n - 1] == n - 1).then(|| red.iter().map(|r| r[n..].to_vec()).collect())
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
        .collect()
}

fn is_alternating(s: &Matrix, f: &Field) -> bool {
    (0..s.len()).all(|i| s[i][i].is_zero() && (0..s.len()).all(|j| s[i][j] == f.neg(s[j][i])))
}

/// An F_p-basis of the additive group spanned by `elems`.
fn additive_basis(f: &Field, elems: impl Iterator<Item = Elem>) -> Vec<Elem> {
    let p = f.characteristic();
    let mut span: HashSet<Elem> = HashSet::from([Elem::ZERO]);
    let mut basis = Vec::new();
    for x in elems {
        if span.contains(&x) {
            continue;
        }
        let mut next = HashSet::new();
        for &s in &span {
            let mut t = s;
            for _ in 0..p {
                next.insert(t);
                t = f.add(t, x);
            }
        }
        span = next;
        basis.push(x);
    }
    basis
}

/// Alternating `r x r` matrices with a single pair `(i, j)`, `i < j`, set
/// to `(b, -b)`.
fn alternating_units(f: &Field, r: usize) -> Vec<Matrix> {
    let basis = additive_basis(f, f.nonzero());
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for &b in &basis {
                let mut s = vec![vec![Elem::ZERO; r]; r];
                s[i][j] = b;
                s[j][i] = f.neg(b);
                out.push(s);
            }
        }
    }
    out
}

fn all_alternating(f: &Field, r: usize) -> Vec<Matrix> {
    let slots: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    all_vectors(f, slots.len())
        .map(|vals| {
            let mut s = vec![vec![Elem::ZERO; r]; r];
            for (&(i, j), &x) in slots.iter().zip(&vals) {
                s[i][j] = x;
                s[j][i] = f.neg(x);
            }
            s
        })
        .collect()
}

// --- K ----------------------------------------------------------------------

/// The constant `a` with `4a + 1 = 0`.
pub fn k_constant(f: &Field) -> Result<Elem> {
    let four = f.from_int(4);
    let inv = f.inv(four).ok_or(Error::EvenCharacteristic)?;
    Ok(f.neg(inv))
}

/// `A_{u,S}: (x, y, z) -> (x, y + a(x.u)u + xS + zu, z + 2a(x.u))` on
/// `Q(x, y, z) = x.y + z^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElement {
    pub u: Vec<Elem>,
    pub s: Matrix,
}

impl KElement {
    pub fn new(f: &Field, u: Vec<Elem>, s: Matrix) -> Result<Self> {
        if s.len() != u.len() || s.iter().any(|row| row.len() != u.len()) {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: s.len(),
            });
        }
        if !is_alternating(&s, f) {
            return Err(Error::Invariant("S must be antisymmetric with zero diagonal".into()));
        }
        Ok(KElement { u, s })
    }

    pub fn identity(r: usize) -> Self {
        KElement {
            u: vec![Elem::ZERO; r],
            s: vec![vec![Elem::ZERO; r]; r],
        }
    }

    pub fn r(&self) -> usize {
        self.u.len()
    }

    pub fn apply(&self, f: &Field, a: Elem, v: &[Elem]) -> Vec<Elem> {
        let r = self.r();
        let (x, y, z) = (&v[..r], &v[r..2 * r], v[2 * r]);
        let xu = x
            .iter()
            .zip(&self.u)
            .fold(Elem::ZERO, |acc, (&p, &q)| f.add(acc, f.mul(p, q)));
        let axu = f.mul(a, xu);
        let mut out = v.to_vec();
        for j in 0..r {
            let xs = (0..r).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(x[i], self.s[i][j])));
            let shift = f.add(f.mul(f.add(axu, z), self.u[j]), xs);
            out[r + j] = f.add(y[j], shift);
        }
        out[2 * r] = f.add(z, f.add(axu, axu));
        out
    }

    /// `[[I, a u^T u + S, 2a u^T], [0, I, 0], [0, u, 1]]`, acting on rows.
    pub fn matrix(&self, f: &Field, a: Elem) -> Matrix {
        let r = self.r();
        let n = 2 * r + 1;
        let mut m = identity(n);
        let two_a = f.add(a, a);
        for i in 0..r {
            for j in 0..r {
                m[i][r + j] = f.add(f.mul(a, f.mul(self.u[i], self.u[j])), self.s[i][j]);
            }
            m[i][2 * r] = f.mul(two_a, self.u[i]);
            m[2 * r][r + i] = self.u[i];
        }
        m
    }

    /// Recovers `(u, S)` from a matrix of the shape above, if it has it.
    pub fn from_matrix(f: &Field, a: Elem, r: usize, m: &Matrix) -> Option<KElement> {
        let n = 2 * r + 1;
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return None;
        }
        let u: Vec<Elem> = (0..r).map(|j| m[2 * r][r + j]).collect();
        let s: Matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| f.sub(m[i][r + j], f.mul(a, f.mul(u[i], u[j]))))
                    .collect()
            })
            .collect();
        let candidate = KElement::new(f, u, s).ok()?;
        (candidate.matrix(f, a) == *m).then_some(candidate)
    }

    /// `A_{u1,S1} A_{u2,S2}^{-1} = A_{u1-u2, S1-S2-a(u1^T u2-u2^T u1)}`.
    pub fn quotient_formula(&self, other: &KElement, f: &Field, a: Elem) -> KElement {
        self.quotient_with(other, f, f.neg(a))
    }

    /// The quotient with cross term `u1^T u2 - u2^T u1` taken at
    /// coefficient 1; agrees with [`Self::quotient_formula`] only when
    /// `-a = 1`, that is `q = 3`.
    pub fn quotient_unit_cross(&self, other: &KElement, f: &Field) -> KElement {
        self.quotient_with(other, f, f.one())
    }

    fn quotient_with(&self, other: &KElement, f: &Field, c: Elem) -> KElement {
        let r = self.r();
        let u = (0..r).map(|i| f.sub(self.u[i], other.u[i])).collect();
        let s = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let base = f.sub(self.s[i][j], other.s[i][j]);
                        let cross = f.sub(
                            f.mul(self.u[i], other.u[j]),
                            f.mul(other.u[i], self.u[j]),
                        );
                        f.add(base, f.mul(c, cross))
                    })
                    .collect()
            })
            .collect();
        KElement { u, s }
    }
}

pub fn k_generators(f: &Field, r: usize) -> Vec<KElement> {
    let basis = additive_basis(f, f.nonzero());
    let mut out = Vec::new();
    for i in 0..r {
        for &b in &basis {
            let mut u = vec![Elem::ZERO; r];
            u[i] = b;
            out.push(KElement {
                u,
                s: vec![vec![Elem::ZERO; r]; r],
            });
        }
    }
    out.extend(alternating_units(f, r).into_iter().map(|s| KElement {
        u: vec![Elem::ZERO; r],
        s,
    }));
    out
}

/// All `q^r q^{r(r-1)/2}` elements.
pub fn k_elements(f: &Field, r: usize) -> Vec<KElement> {
    let ss = all_alternating(f, r);
    all_vectors(f, r)
        .flat_map(|u| ss.iter().map(move |s| KElement { u: u.clone(), s: s.clone() }))
        .collect()
}

// --- L ----------------------------------------------------------------------

/// `(x, y) -> (x, xS + y)` on `Q(x, y) = x.y`, `S` alternating.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LElement {
    pub s: Matrix,
}

impl LElement {
    pub fn new(f: &Field, s: Matrix) -> Result<Self> {
        if s.iter().any(|row| row.len() != s.len()) {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                found: s.first().map_or(0, Vec::len),
            });
        }
        if !is_alternating(&s, f) {
            return Err(Error::Invariant("S must be alternating".into()));
        }
        Ok(LElement { s })
    }

    pub fn apply(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let r = self.s.len();
        let mut out = v.to_vec();
        for j in 0..r {
            let xs = (0..r).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(v[i], self.s[i][j])));
            out[r + j] = f.add(v[r + j], xs);
        }
        out
    }

    /// `[[I, S], [0, I]]`, acting on rows.
    pub fn matrix(&self) -> Matrix {
        let r = self.s.len();
        let mut m = identity(2 * r);
        for i in 0..r {
            for j in 0..r {
                m[i][r + j] = self.s[i][j];
            }
        }
        m
    }

    pub fn from_matrix(f: &Field, r: usize, m: &Matrix) -> Option<LElement> {
        if m.len() != 2 * r || m.iter().any(|row| row.len() != 2 * r) {
            return None;
        }
        let s: Matrix = (0..r).map(|i| m[i][r..].to_vec()).collect();
        let candidate = LElement::new(f, s).ok()?;
        (candidate.matrix() == *m).then_some(candidate)
    }
}

pub fn l_generators(f: &Field, r: usize) -> Vec<LElement> {
    alternating_units(f, r).into_iter().map(|s| LElement { s }).collect()
}

pub fn l_elements(f: &Field, r: usize) -> Vec<LElement> {
    all_alternating(f, r).into_iter().map(|s| LElement { s }).collect()
}

// --- G ----------------------------------------------------------------------

/// `sigma_c: (u, v) -> (u, v + sum_i c_i u^{q^{2i}})` with `c_0^{q^r} = c_0`
/// and `c_i + c_{r-i}^{q^{r+2i}} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GElement {
    pub c: Vec<Elem>,
}

impl GElement {
    pub fn new(h: &HermitianSpace, c: Vec<Elem>) -> Result<Self> {
        let r = h.r() as usize;
        if c.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c.len(),
            });
        }
        let f = h.big();
        if h.frob_q(c[0], r as u32) != c[0] {
            return Err(Error::Invariant("c_0 must lie in GF(q^r)".into()));
        }
        for i in 1..r {
            let t = f.add(c[i], h.frob_q(c[r - i], (r + 2 * i) as u32));
            if !t.is_zero() {
                return Err(Error::Invariant(format!("c_{i} violates the pairing condition")));
            }
        }
        Ok(GElement { c })
    }

    /// `sum_i c_i u^{q^{2i}}`.
    pub fn shift(&self, h: &HermitianSpace, u: Elem) -> Elem {
        let f = h.big();
        self.c
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (i, &ci)| f.add(acc, f.mul(ci, h.frob_q(u, 2 * i as u32))))
    }

    pub fn apply(&self, h: &HermitianSpace, v: &[Elem]) -> Vec<Elem> {
        vec![v[0], h.big().add(v[1], self.shift(h, v[0]))]
    }

    pub fn compose(&self, other: &GElement, h: &HermitianSpace) -> GElement {
        let f = h.big();
        GElement {
            c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }
}

/// Fills the dependent coordinates `c_{r-i}` from the free ones.
fn g_from_free(h: &HermitianSpace, c0: Elem, free: &[Elem]) -> GElement {
    let r = h.r() as usize;
    let f = h.big();
    let mut c = vec![Elem::ZERO; r];
    c[0] = c0;
    for (k, &ci) in free.iter().enumerate() {
        let i = k + 1;
        c[i] = ci;
        c[r - i] = f.neg(h.frob_q(ci, (3 * r - 2 * i) as u32));
    }
    GElement { c }
}

fn subfield_q_r(h: &HermitianSpace) -> Vec<Elem> {
    let r = h.r();
    h.big().elements().filter(|&x| h.frob_q(x, r) == x).collect()
}

pub fn g_generators(h: &HermitianSpace) -> Vec<GElement> {
    let f = h.big();
    let r = h.r() as usize;
    let nfree = (r - 1) / 2;
    let zero = vec![Elem::ZERO; nfree];
    let mut out: Vec<GElement> = additive_basis(f, subfield_q_r(h).into_iter())
        .into_iter()
        .map(|b| g_from_free(h, b, &zero))
        .collect();
    let big_basis = additive_basis(f, f.nonzero());
    for k in 0..nfree {
        for &b in &big_basis {
            let mut free = zero.clone();
            free[k] = b;
            out.push(g_from_free(h, Elem::ZERO, &free));
        }
    }
    out
}

/// All `q^{r^2}` elements.
pub fn g_elements(h: &HermitianSpace) -> Vec<GElement> {
    let f = h.big();
    let r = h.r() as usize;
    let nfree = (r - 1) / 2;
    let sub = subfield_q_r(h);
    let mut frees: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..nfree {
        frees = frees
            .into_iter()
            .flat_map(|v| {
                f.elements().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    sub.iter()
        .flat_map(|&c0| frees.iter().map(move |fr| g_from_free(h, c0, fr)))
        .collect()
}

/// `(k, i)`: `k = log(u) mod e`, and `i = h(p)` after scaling `p` so that
/// `u = w^k`.
pub fn g_orbit_key(h: &HermitianSpace, p: &[Elem]) -> Result<(u64, Elem)> {
    let f = h.big();
    let q = u64::from(h.q());
    let order = u64::from(f.order()) - 1;
    let e = order / (q * q - 1);
    let l = u64::from(
        f.log(p[0])
            .ok_or_else(|| Error::Invariant("vertex with u = 0".into()))?,
    );
    let k = l % e;
    let lambda = f.exp((k + order - l % order) % order);
    let scaled = [f.mul(lambda, p[0]), f.mul(lambda, p[1])];
    debug_assert_eq!(scaled[0], f.exp(k));
    Ok((k, h.norm_form(&scaled)))
}

// --- orbits -----------------------------------------------------------------

fn check_kind(g: &Graph, kind: GroupKind) -> Result<()> {
    let spec = g.spec();
    let ok = match kind {
        GroupKind::K => {
            matches!(spec.family, Family::NoPerp | Family::NoOdd) && spec.coords == Coords::Split
        }
        GroupKind::L => {
            matches!(spec.family, Family::NoEven3 | Family::NoEven2)
                && spec.eps == Some(1)
                && spec.coords == Coords::Split
        }
        GroupKind::G => spec.family == Family::Nu,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::WrongFamily(format!(
            "group {kind} does not act on {spec}; K needs no-perp/no-odd with coords=split, \
             L needs no-even3/no-even2 eps=+1 with coords=split, G needs nu"
        )))
    }
}

/// A group action on coordinate vectors of one graph.
enum Action {
    K(Vec<KElement>, Elem),
    L(Vec<LElement>),
    G(Vec<GElement>),
}

impl Action {
    fn new(g: &Graph, kind: GroupKind, full: bool) -> Result<Action> {
        check_kind(g, kind)?;
        let space = g.space();
        let r = g.spec().r as usize;
        Ok(match kind {
            GroupKind::K => {
                let f = space.coord_field();
                let els = if full { k_elements(f, r) } else { k_generators(f, r) };
                Action::K(els, k_constant(f)?)
            }
            GroupKind::L => {
                let f = space.coord_field();
                Action::L(if full { l_elements(f, r) } else { l_generators(f, r) })
            }
            GroupKind::G => {
                let h = space.hermitian().expect("nu graphs are hermitian");
                Action::G(if full { g_elements(h) } else { g_generators(h) })
            }
        })
    }

    fn len(&self) -> usize {
        match self {
            Action::K(e, _) => e.len(),
            Action::L(e) => e.len(),
            Action::G(e) => e.len(),
        }
    }

    fn image(&self, g: &Graph, which: usize, p: &Point) -> Result<usize> {
        let space = g.space();
        let v = match self {
            Action::K(els, a) => els[which].apply(space.coord_field(), *a, &p.0),
            Action::L(els) => els[which].apply(space.coord_field(), &p.0),
            Action::G(els) => els[which].apply(space.hermitian().expect("hermitian"), &p.0),
        };
        g.index_of_vector(&v).ok_or_else(|| {
            Error::Invariant(format!("group element {which} maps vertex {p} off the vertex set"))
        })
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Orbits as index lists ordered by smallest member, by closing the
/// generator permutations under union-find.
fn orbits_by_generators(g: &Graph, action: &Action) -> Result<Vec<Vec<usize>>> {
    let n = g.v();
    let mut parent: Vec<usize> = (0..n).collect();
    for which in 0..action.len() {
        let perm: Vec<usize> = g
            .vertices()
            .par_iter()
            .map(|p| action.image(g, which, p))
            .collect::<Result<_>>()?;
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(i);
    }
    Ok(out)
}

/// Orbits as index lists, by applying every group element.
fn orbits_by_elements(g: &Graph, action: &Action) -> Result<Vec<Vec<usize>>> {
    let n = g.v();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let p = &g.vertices()[i];
        let mut orbit: Vec<usize> = (0..action.len())
            .into_par_iter()
            .map(|w| action.image(g, w, p))
            .collect::<Result<_>>()?;
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            if seen[j] {
                return Err(Error::Invariant("orbits overlap".into()));
            }
            seen[j] = true;
        }
        out.push(orbit);
    }
    Ok(out)
}

fn x_part_label(g: &Graph, p: &Point) -> String {
    let r = g.spec().r as usize;
    match normalize_linear(g.space().coord_field(), &p.0[..r]) {
        Some(x) => x.to_string(),
        None => Point(p.0[..r].to_vec()).to_string(),
    }
}

fn label_orbits(g: &Graph, kind: GroupKind, orbits: Vec<Vec<usize>>) -> Result<Vec<VertexSet>> {
    let spec = *g.spec();
    let z_point = {
        let d = g.space().dim();
        let mut z = vec![Elem::ZERO; d];
        z[d - 1] = Elem::ONE;
        g.index_of_vector(&z)
    };
    orbits
        .into_iter()
        .map(|idx| {
            let rep = &g.vertices()[idx[0]];
            let (provenance, value) = match kind {
                GroupKind::K => {
                    let value = match spec.family {
                        Family::NoPerp => Some(expected::k_orbit(&spec)?),
                        Family::NoOdd if z_point.is_some_and(|z| idx.contains(&z)) => {
                            Some(expected::k_orbit_of_z(&spec)?)
                        }
                        _ => None,
                    };
                    (Provenance::KOrbit { rep: rep.to_string() }, value)
                }
                GroupKind::L => (
                    Provenance::LOrbit {
                        u: x_part_label(g, rep),
                    },
                    Some(expected::l_orbit(&spec)?),
                ),
                GroupKind::G => {
                    let h = g.space().hermitian().expect("hermitian");
                    let (k, i) = g_orbit_key(h, &rep.0)?;
                    (Provenance::GOrbit { k, i: i.index() }, None)
                }
            };
            Ok(VertexSet::new(spec, g.v(), idx, provenance)?
                .with_expected(value.map(Expected::single)))
        })
        .collect()
}

/// Orbits of `kind` on the vertices of `g`, ordered by smallest vertex.
pub fn group_orbits(g: &Graph, kind: GroupKind) -> Result<Vec<VertexSet>> {
    let action = Action::new(g, kind, false)?;
    let orbits = orbits_by_generators(g, &action)?;
    label_orbits(g, kind, orbits)
}

/// Same partition as [`group_orbits`], by applying every group element.
pub fn group_orbits_full(g: &Graph, kind: GroupKind) -> Result<Vec<VertexSet>> {
    let action = Action::new(g, kind, true)?;
    let orbits = orbits_by_elements(g, &action)?;
    label_orbits(g, kind, orbits)
}

/// The G-orbit of a single point, by applying every element.
pub(super) fn g_orbit_of(g: &Graph, p: &Point) -> Result<Vec<usize>> {
    let action = Action::new(g, GroupKind::G, true)?;
    let mut orbit: Vec<usize> = (0..action.len())
        .into_par_iter()
        .map(|w| action.image(g, w, p))
        .collect::<Result<_>>()?;
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{FormModel, QuadraticForm};
    use crate::srg::{build_graph, GraphSpec};

    fn split(f: Family, q: u32, r: u32, eps: i8) -> Graph {
        let spec = GraphSpec::new(f, q, r, Some(eps))
            .unwrap()
            .with_coords(Coords::Split)
            .unwrap();
        build_graph(&spec).unwrap()
    }

    #[test]
    fn k_constant_at_five_is_one() {
        let f = Field::of_order(5).unwrap();
        assert_eq!(k_constant(&f).unwrap(), f.from_int(1));
        let f = Field::of_order(3).unwrap();
        let a = k_constant(&f).unwrap();
        assert!(f.add(f.mul(f.from_int(4), a), Elem::ONE).is_zero());
        assert!(k_constant(&Field::of_order(4).unwrap()).is_err());
    }

    #[test]
    fn k_apply_matches_matrix_and_preserves_form() {
        let f = Field::of_order(3).unwrap();
        let a = k_constant(&f).unwrap();
        let form = QuadraticForm::canonical(FormModel::ParabolicSplit, f.clone(), 2).unwrap();
        for el in k_elements(&f, 2) {
            let m = el.matrix(&f, a);
            assert_eq!(KElement::from_matrix(&f, a, 2, &m), Some(el.clone()));
            for v in all_vectors(&f, 5) {
                let w = el.apply(&f, a, &v);
                assert_eq!(w, vec_mat(&f, &v, &m));
                assert_eq!(form.value(&w), form.value(&v));
            }
        }
    }

    #[test]
    fn k_quotient_formula_matches_matrices() {
        for q in [3, 5] {
            let f = Field::of_order(q).unwrap();
            let a = k_constant(&f).unwrap();
            let els = k_elements(&f, 2);
            assert_eq!(els.len(), (q * q * q) as usize);
            let mut unit_agrees = true;
            for x in &els {
                for y in els.iter().step_by(5) {
                    let inv = mat_inv(&f, &y.matrix(&f, a)).unwrap();
                    let prod = mat_mul(&f, &x.matrix(&f, a), &inv);
                    let got = KElement::from_matrix(&f, a, 2, &prod).expect("closed");
                    assert_eq!(got, x.quotient_formula(y, &f, a));
                    unit_agrees &= got == x.quotient_unit_cross(y, &f);
                }
            }
            assert_eq!(unit_agrees, q == 3);
        }
    }

    #[test]
    fn l_preserves_form() {
        let f = Field::of_order(2).unwrap();
        let form = QuadraticForm::canonical(FormModel::HyperbolicSplit, f.clone(), 3).unwrap();
        let els = l_elements(&f, 3);
        assert_eq!(els.len(), 8);
        for el in &els {
            assert_eq!(LElement::from_matrix(&f, 3, &el.matrix()), Some(el.clone()));
            for v in all_vectors(&f, 6) {
                assert_eq!(form.value(&el.apply(&f, &v)), form.value(&v));
            }
        }
    }

    #[test]
    fn k_orbits_on_no_perp() {
        let g = split(Family::NoPerp, 5, 2, 1);
        let orbits = group_orbits(&g, GroupKind::K).unwrap();
        assert_eq!(orbits.len(), 13);
        assert!(orbits.iter().all(|o| o.len() == 25));
        let full = group_orbits_full(&g, GroupKind::K).unwrap();
        assert_eq!(orbits, full);
    }

    #[test]
    fn l_orbits_on_no_even2() {
        let g = split(Family::NoEven2, 2, 3, 1);
        let orbits = group_orbits(&g, GroupKind::L).unwrap();
        assert_eq!(orbits.len(), 7);
        assert!(orbits.iter().all(|o| o.len() == 4));
        assert_eq!(orbits, group_orbits_full(&g, GroupKind::L).unwrap());
    }

    #[test]
    fn wrong_family_is_rejected() {
        let g = build_graph(&GraphSpec::new(Family::NoPerp, 3, 2, Some(1)).unwrap()).unwrap();
        assert!(matches!(group_orbits(&g, GroupKind::K), Err(Error::WrongFamily(_))));
        assert!(matches!(group_orbits(&g, GroupKind::G), Err(Error::WrongFamily(_))));
        let g = build_graph(&GraphSpec::new(Family::NoEven2, 2, 3, Some(1)).unwrap()).unwrap();
        assert!(matches!(group_orbits(&g, GroupKind::L), Err(Error::WrongFamily(_))));
    }

    #[test]
    fn g_elements_are_valid_and_preserve_forms() {
        let h = HermitianSpace::new(2, 3).unwrap();
        let els = g_elements(&h);
        assert_eq!(els.len(), 512);
        let gens = g_generators(&h);
        for el in &gens {
            assert!(GElement::new(&h, el.c.clone()).is_ok());
        }
        let f = h.big();
        for el in &gens {
            for u in f.elements().step_by(7) {
                for v in f.elements().step_by(5) {
                    let a = [u, v];
                    let b = el.apply(&h, &a);
                    assert_eq!(h.norm_form(&b), h.norm_form(&a));
                    for w in [[f.exp(3), f.exp(11)], [Elem::ONE, Elem::ZERO]] {
                        assert_eq!(h.form(&b, &el.apply(&h, &w)), h.form(&a, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn g_rejects_unpaired_coefficients() {
        let h = HermitianSpace::new(2, 3).unwrap();
        let f = h.big();
        assert!(GElement::new(&h, vec![Elem::ZERO, f.exp(1), Elem::ZERO]).is_err());
        assert!(GElement::new(&h, vec![f.exp(1), Elem::ZERO, Elem::ZERO]).is_err());
    }
}
