//! Coordinate spaces over finite fields: projective points, the quadratic
//! and hermitian forms the graph families live on, perps and totally
//! singular subspaces.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{prime_power, Elem, Field, SquareClass, SubfieldEmbedding};
use crate::srg::{Family, GraphSpec};

// --- vectors and linear algebra ----------------------------------------

pub fn add_vec(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn sub_vec(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn scale_vec(f: &Field, c: Elem, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn unit_vec(dim: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; dim];
    v[i] = Elem::ONE;
    v
}

/// Every vector of `F^dim` in lexicographic order (first coordinate most
/// significant).
pub fn all_vectors(f: &Field, dim: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = f.order() as u64;
    let total = q.pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![Elem::ZERO; dim];
        for slot in v.iter_mut().rev() {
            *slot = Elem((idx % q) as u32);
            idx /= q;
        }
        v
    })
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(f: &Field, rows: &[Vec<Elem>]) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]).expect("pivot is nonzero");
        m[row] = scale_vec(f, inv, &m[row]);
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let c = m[i][col];
                let scaled = scale_vec(f, c, &m[row]);
                m[i] = sub_vec(f, &m[i], &scaled);
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(f: &Field, rows: &[Vec<Elem>]) -> usize {
    rref(f, rows).1.len()
}

/// Basis of `{x : row . x = 0 for every row}` in `F^dim`.
pub fn nullspace(f: &Field, rows: &[Vec<Elem>], dim: usize) -> Vec<Vec<Elem>> {
    let (r, pivots) = rref(f, rows);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; dim];
            v[fc] = Elem::ONE;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

// --- projective points --------------------------------------------------

/// Canonical representative of a projective point.
///
/// For coordinate spaces over GF(q) the first nonzero coordinate is 1. For
/// the hermitian space (pairs over GF(q^{2r}), scalars from GF(q^2)) the
/// representative is the smallest scalar multiple in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Elem>);

impl Point {
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }
}

/// `(i0,i1,...)` with canonical element indices.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x.index())?;
        }
        f.write_str(")")
    }
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize_linear(f: &Field, v: &[Elem]) -> Option<Point> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    let inv = f.inv(lead)?;
    Some(Point(scale_vec(f, inv, v)))
}

// --- quadratic forms ----------------------------------------------------

/// Which coordinate model a quadratic form instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormModel {
    /// `x_1 x_{2r+1} + .. + x_r x_{r+2} + x_{r+1}^2`
    Parabolic,
    /// `x . y + z^2` on `F^r x F^r x F`
    ParabolicSplit,
    /// `x_1 x_2 + x_3 x_4 + ..`
    Hyperbolic,
    /// `x . y` on `F^r x F^r`
    HyperbolicSplit,
    /// `x_1 x_2 + .. + x_{2r-3} x_{2r-2} + g(x_{2r-1}, x_{2r})`, g anisotropic
    Elliptic,
}

impl FormModel {
    pub fn dim(self, r: usize) -> usize {
        match self {
            FormModel::Parabolic | FormModel::ParabolicSplit => 2 * r + 1,
            _ => 2 * r,
        }
    }

    /// Number of hyperbolic pairs split off, i.e. the Witt index.
    pub fn witt_index(self, r: usize) -> usize {
        match self {
            FormModel::Elliptic => r - 1,
            _ => r,
        }
    }
}

/// `Q(x) = sum_{i <= j} c_ij x_i x_j` together with its polar form.
#[derive(Clone)]
pub struct QuadraticForm {
    field: Arc<Field>,
    dim: usize,
    terms: Vec<(usize, usize, Elem)>,
    polar: Vec<Elem>,
    model: FormModel,
    r: usize,
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticForm")
            .field("model", &self.model)
            .field("q", &self.field.order())
            .field("dim", &self.dim)
            .field("terms", &self.terms)
            .finish()
    }
}

impl QuadraticForm {
    /// Builds a form from its upper-triangular terms `(i, j, c_ij)`, `i <= j`,
    /// and checks nondegeneracy.
    pub fn new(
        field: Arc<Field>,
        dim: usize,
        terms: Vec<(usize, usize, Elem)>,
        model: FormModel,
        r: usize,
    ) -> Result<Self> {
        let f = &*field;
        let mut polar = vec![Elem::ZERO; dim * dim];
        for &(i, j, c) in &terms {
            if i > j || j >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: j + 1,
                });
            }
            if i == j {
                polar[i * dim + i] = f.add(polar[i * dim + i], f.add(c, c));
            } else {
                polar[i * dim + j] = f.add(polar[i * dim + j], c);
                polar[j * dim + i] = f.add(polar[j * dim + i], c);
            }
        }
        let form = QuadraticForm {
            field,
            dim,
            terms,
            polar,
            model,
            r,
        };
        if !form.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        Ok(form)
    }

    /// The canonical form of the given model with Witt parameter `r`.
    pub fn canonical(model: FormModel, field: Arc<Field>, r: usize) -> Result<Self> {
        let one = Elem::ONE;
        let dim = model.dim(r);
        let mut terms = Vec::new();
        match model {
            FormModel::Parabolic => {
                for i in 0..r {
                    terms.push((i, 2 * r - i, one));
                }
                terms.push((r, r, one));
            }
            FormModel::ParabolicSplit => {
                for i in 0..r {
                    terms.push((i, r + i, one));
                }
                terms.push((2 * r, 2 * r, one));
            }
            FormModel::Hyperbolic => {
                for i in 0..r {
                    terms.push((2 * i, 2 * i + 1, one));
                }
            }
            FormModel::HyperbolicSplit => {
                for i in 0..r {
                    terms.push((i, r + i, one));
                }
            }
            FormModel::Elliptic => {
                if r == 0 {
                    return Err(Error::UnsupportedParameters("elliptic form needs r >= 1".into()));
                }
                for i in 0..r - 1 {
                    terms.push((2 * i, 2 * i + 1, one));
                }
                let delta = anisotropic_delta(&field);
                let (a, b) = (2 * r - 2, 2 * r - 1);
                terms.push((a, a, one));
                terms.push((a, b, one));
                terms.push((b, b, delta));
            }
        }
        QuadraticForm::new(field, dim, terms, model, r)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn model(&self) -> FormModel {
        self.model
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Upper-triangular terms `(i, j, c_ij)`.
    pub fn terms(&self) -> &[(usize, usize, Elem)] {
        &self.terms
    }

    /// Symmetric matrix `M` with `B(x, y) = x M y^T`.
    pub fn polar_matrix(&self) -> &[Elem] {
        &self.polar
    }

    fn check_dim(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `Q(x)` by direct polynomial evaluation.
    pub fn eval(&self, x: &[Elem]) -> Result<Elem> {
        self.check_dim(x)?;
        Ok(self.value(x))
    }

    #[inline]
    pub fn value(&self, x: &[Elem]) -> Elem {
        let f = &*self.field;
        self.terms.iter().fold(Elem::ZERO, |acc, &(i, j, c)| {
            f.add(acc, f.mul(c, f.mul(x[i], x[j])))
        })
    }

    /// `B(x, y) = Q(x + y) - Q(x) - Q(y)`, evaluated literally.
    pub fn polar_b(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let f = &*self.field;
        let s = add_vec(f, x, y);
        Ok(f.sub(f.sub(self.value(&s), self.value(x)), self.value(y)))
    }

    /// `x M`, so that `B(x, y) = dot(x M, y)`.
    pub fn polar_image(&self, x: &[Elem]) -> Vec<Elem> {
        let f = &*self.field;
        (0..self.dim)
            .map(|j| {
                (0..self.dim).fold(Elem::ZERO, |acc, i| {
                    f.add(acc, f.mul(x[i], self.polar[i * self.dim + j]))
                })
            })
            .collect()
    }

    /// `B(x, y)` through the polar matrix.
    #[inline]
    pub fn polar(&self, x: &[Elem], y: &[Elem]) -> Elem {
        dot(&self.field, &self.polar_image(x), y)
    }

    fn polar_rank(&self) -> usize {
        let rows: Vec<Vec<Elem>> = (0..self.dim)
            .map(|i| self.polar[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect();
        rank(&self.field, &rows)
    }

    /// Nondegenerate: the polar form has trivial radical, or (characteristic
    /// 2, odd dimension) a one-dimensional radical on which `Q` is nonzero.
    pub fn is_nondegenerate(&self) -> bool {
        let rows: Vec<Vec<Elem>> = (0..self.dim)
            .map(|i| self.polar[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect();
        let rad = nullspace(&self.field, &rows, self.dim);
        match rad.len() {
            0 => true,
            1 => self.field.characteristic() == 2 && !self.value(&rad[0]).is_zero(),
            _ => false,
        }
    }

    /// `S^perp` with respect to the polar form.
    pub fn perp(&self, s: &Subspace) -> Result<Subspace> {
        if self.polar_rank() != self.dim {
            return Err(Error::DegenerateForm);
        }
        for b in s.basis() {
            self.check_dim(b)?;
        }
        let rows: Vec<Vec<Elem>> = s.basis().iter().map(|b| self.polar_image(b)).collect();
        let basis = if rows.is_empty() {
            (0..self.dim).map(|i| unit_vec(self.dim, i)).collect()
        } else {
            nullspace(&self.field, &rows, self.dim)
        };
        Subspace::new(self.field.clone(), basis)
    }

    pub fn perp_of_point(&self, p: &Point) -> Result<Subspace> {
        self.perp(&Subspace::new(self.field.clone(), vec![p.0.clone()])?)
    }

    /// Totally singular check on a basis: `Q(b_i) = 0` and `B(b_i, b_j) = 0`.
    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter().all(|v| self.value(v).is_zero())
            && (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.polar(&b[i], &b[j]).is_zero()))
    }

    /// Totally singular check by evaluating `Q` on every vector of `s`.
    pub fn is_totally_singular_enumerated(&self, s: &Subspace) -> bool {
        s.vectors().all(|v| self.value(&v).is_zero())
    }

    /// Basis vectors of the canonical maximal totally singular flag,
    /// `W_1 = <f_1>`, `W_2 = <f_1, f_2>`, ...
    pub fn singular_flag_vectors(&self) -> Vec<Vec<Elem>> {
        let len = self.model.witt_index(self.r);
        (0..len)
            .map(|i| match self.model {
                FormModel::Hyperbolic | FormModel::Elliptic => unit_vec(self.dim, 2 * i),
                _ => unit_vec(self.dim, i),
            })
            .collect()
    }

    /// Number of singular points on the projective line through `<x>` and `<y>`.
    pub fn singular_points_on_line(&self, x: &[Elem], y: &[Elem]) -> usize {
        let f = &*self.field;
        let mut count = usize::from(self.value(x).is_zero());
        for lambda in f.elements() {
            let v = add_vec(f, &scale_vec(f, lambda, x), y);
            if self.value(&v).is_zero() {
                count += 1;
            }
        }
        count
    }

    /// Every projective point of `PG(dim - 1, q)` in canonical order.
    pub fn points(&self) -> Vec<Point> {
        all_vectors(&self.field, self.dim)
            .filter(|v| v.iter().find(|x| !x.is_zero()) == Some(&Elem::ONE))
            .map(Point)
            .collect()
    }
}

#[inline]
pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// First `d` in canonical order such that `x^2 + xy + d y^2` is anisotropic.
pub fn anisotropic_delta(f: &Field) -> Elem {
    f.elements()
        .find(|&d| f.elements().all(|x| !f.add(f.add(f.mul(x, x), x), d).is_zero()))
        .expect("an anisotropic binary form exists over every finite field")
}

// --- the hermitian space ----------------------------------------------------

/// `V = GF(q^{2r}) x GF(q^{2r})` over GF(q^2) with
/// `H((u1,v1),(u2,v2)) = Tr_{q^{2r}/q^2}(u1 v2^{q^r} + v1 u2^{q^r})` and
/// `h((u,v)) = Tr_{q^{2r}/q}(u v^{q^r})`.
pub struct HermitianSpace {
    q: u32,
    r: u32,
    big: Arc<Field>,
    mid: Arc<Field>,
    base: Arc<Field>,
    mid_in_big: SubfieldEmbedding,
    base_in_big: SubfieldEmbedding,
    base_in_mid: SubfieldEmbedding,
    conj_steps: u32,
    tr_mid: Vec<Elem>,
    tr_base: Vec<Elem>,
    scalars: Vec<Elem>,
}

impl fmt::Debug for HermitianSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HermitianSpace")
            .field("q", &self.q)
            .field("r", &self.r)
            .finish()
    }
}

impl HermitianSpace {
    pub fn new(q: u32, r: u32) -> Result<Self> {
        let (p, s) = prime_power(q)
            .ok_or_else(|| Error::UnsupportedParameters(format!("q = {q} is not a prime power")))?;
        if p != 2 {
            return Err(Error::UnsupportedParameters(format!(
                "hermitian model needs even q, got {q}"
            )));
        }
        if r < 3 || r % 2 == 0 {
            return Err(Error::UnsupportedParameters(format!(
                "hermitian model needs odd r >= 3, got {r}"
            )));
        }
        let big = Field::shared(p, 2 * r * s)?;
        let mid = Field::shared(p, 2 * s)?;
        let base = Field::shared(p, s)?;
        let mid_in_big = SubfieldEmbedding::new(mid.clone(), big.clone())?;
        let base_in_big = SubfieldEmbedding::new(base.clone(), big.clone())?;
        let base_in_mid = SubfieldEmbedding::new(base.clone(), mid.clone())?;
        let tr_mid = mid_in_big.trace_table();
        let tr_base = base_in_big.trace_table();
        let scalars = mid
            .nonzero()
            .map(|l| mid_in_big.embed(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(HermitianSpace {
            q,
            r,
            big,
            mid,
            base,
            mid_in_big,
            base_in_big,
            base_in_mid,
            conj_steps: r * s,
            tr_mid,
            tr_base,
            scalars,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// GF(q^{2r}), the coordinate field.
    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    /// GF(q^2), the scalar field of `V`.
    pub fn mid(&self) -> &Arc<Field> {
        &self.mid
    }

    /// GF(q).
    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn mid_in_big(&self) -> &SubfieldEmbedding {
        &self.mid_in_big
    }

    pub fn base_in_big(&self) -> &SubfieldEmbedding {
        &self.base_in_big
    }

    pub fn base_in_mid(&self) -> &SubfieldEmbedding {
        &self.base_in_mid
    }

    /// `x^{q^r}`.
    #[inline]
    pub fn conj(&self, x: Elem) -> Elem {
        self.big.frobenius(x, self.conj_steps)
    }

    /// `x^{q^m}`.
    #[inline]
    pub fn frob_q(&self, x: Elem, m: u32) -> Elem {
        self.big.frobenius(x, m * (self.conj_steps / self.r))
    }

    /// `Tr_{q^{2r}/q^2}` with values in GF(q^2).
    #[inline]
    pub fn trace_mid(&self, x: Elem) -> Elem {
        self.tr_mid[x.index() as usize]
    }

    /// `Tr_{q^{2r}/q}` with values in GF(q).
    #[inline]
    pub fn trace_base(&self, x: Elem) -> Elem {
        self.tr_base[x.index() as usize]
    }

    fn check(&self, a: &[Elem]) -> Result<()> {
        if a.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: a.len(),
            });
        }
        if !a.iter().all(|&x| self.big.contains(x)) {
            return Err(Error::WrongField);
        }
        Ok(())
    }

    /// `H(a, b)` in GF(q^2).
    #[inline]
    pub fn form(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let f = &*self.big;
        let z = f.add(f.mul(a[0], self.conj(b[1])), f.mul(a[1], self.conj(b[0])));
        self.trace_mid(z)
    }

    /// `h(a)` in GF(q).
    #[inline]
    pub fn norm_form(&self, a: &[Elem]) -> Elem {
        self.trace_base(self.big.mul(a[0], self.conj(a[1])))
    }

    /// `(H(a, b), h(a))`.
    pub fn hermitian_forms(&self, a: &[Elem], b: &[Elem]) -> Result<(Elem, Elem)> {
        self.check(a)?;
        self.check(b)?;
        Ok((self.form(a, b), self.norm_form(a)))
    }

    /// GF(q^2)^* embedded in GF(q^{2r}).
    pub fn scalars(&self) -> &[Elem] {
        &self.scalars
    }

    /// Smallest scalar multiple of a nonzero pair.
    pub fn normalize(&self, a: &[Elem]) -> Option<Point> {
        if a.iter().all(|x| x.is_zero()) {
            return None;
        }
        self.scalars
            .iter()
            .map(|&l| scale_vec(&self.big, l, a))
            .min()
            .map(Point)
    }

    /// Number of isotropic points on the line through `<x>` and `<y>`.
    pub fn isotropic_points_on_line(&self, x: &[Elem], y: &[Elem]) -> usize {
        let f = &*self.big;
        let mut count = usize::from(self.norm_form(x).is_zero());
        for lambda in std::iter::once(Elem::ZERO).chain(self.scalars.iter().copied()) {
            let v = add_vec(f, &scale_vec(f, lambda, x), y);
            if self.norm_form(&v).is_zero() {
                count += 1;
            }
        }
        count
    }

    /// Every projective point of `V`, sorted canonically.
    pub fn points(&self) -> Vec<Point> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for u in self.big.elements() {
            for v in self.big.elements() {
                if let Some(p) = self.normalize(&[u, v]) {
                    if seen.insert(p.clone()) {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

// --- subspaces --------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<Field>,
    basis: Vec<Vec<Elem>>,
}

impl Subspace {
    /// Checks linear independence by echelon reduction.
    pub fn new(field: Arc<Field>, basis: Vec<Vec<Elem>>) -> Result<Self> {
        if let Some(first) = basis.first() {
            if basis.iter().any(|b| b.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    found: basis.iter().map(Vec::len).find(|&l| l != first.len()).unwrap(),
                });
            }
        }
        if rank(&field, &basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace { field, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Reduced echelon basis; equal subspaces have equal canonical bases.
    pub fn canonical(&self) -> Vec<Vec<Elem>> {
        rref(&self.field, &self.basis).0
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&self.field, &rows) == self.basis.len()
    }

    /// Every vector of the subspace.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let f = &*self.field;
        let ambient = self.basis.first().map_or(0, Vec::len);
        all_vectors(f, self.basis.len()).map(move |coeffs| {
            coeffs
                .iter()
                .zip(&self.basis)
                .fold(vec![Elem::ZERO; ambient], |acc, (&c, b)| {
                    add_vec(f, &acc, &scale_vec(f, c, b))
                })
        })
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.canonical() == other.canonical()
    }
}

// --- spaces and vertex sets -------------------------------------------------

/// The ambient geometry of a graph family.
#[derive(Debug)]
pub enum Space {
    Quadratic(QuadraticForm),
    Hermitian(HermitianSpace),
}

impl Space {
    /// Field the coordinates live in.
    pub fn coord_field(&self) -> &Arc<Field> {
        match self {
            Space::Quadratic(form) => form.field(),
            Space::Hermitian(h) => h.big(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Space::Quadratic(form) => form.dim(),
            Space::Hermitian(_) => 2,
        }
    }

    pub fn normalize(&self, v: &[Elem]) -> Option<Point> {
        match self {
            Space::Quadratic(form) => normalize_linear(form.field(), v),
            Space::Hermitian(h) => h.normalize(v),
        }
    }

    pub fn quadratic(&self) -> Option<&QuadraticForm> {
        match self {
            Space::Quadratic(form) => Some(form),
            Space::Hermitian(_) => None,
        }
    }

    pub fn hermitian(&self) -> Option<&HermitianSpace> {
        match self {
            Space::Hermitian(h) => Some(h),
            Space::Quadratic(_) => None,
        }
    }

    /// Number of singular (isotropic) points on the line `<p1, p2>`.
    pub fn tangent_points_on_line(&self, p1: &Point, p2: &Point) -> usize {
        match self {
            Space::Quadratic(form) => form.singular_points_on_line(&p1.0, &p2.0),
            Space::Hermitian(h) => h.isotropic_points_on_line(&p1.0, &p2.0),
        }
    }
}

/// The canonical coordinate model for a graph spec.
pub fn canonical_space(spec: &GraphSpec) -> Result<Space> {
    spec.validate()?;
    if spec.family == Family::Nu {
        return Ok(Space::Hermitian(HermitianSpace::new(spec.q, spec.r)?));
    }
    let field = Field::of_order(spec.q)?;
    Ok(Space::Quadratic(QuadraticForm::canonical(
        spec.form_model()?,
        field,
        spec.r as usize,
    )?))
}

/// Membership test for the vertex set of the designated graph.
pub fn is_vertex(spec: &GraphSpec, space: &Space, p: &Point) -> bool {
    match space {
        Space::Hermitian(h) => !h.norm_form(&p.0).is_zero(),
        Space::Quadratic(form) => {
            let value = form.value(&p.0);
            if value.is_zero() {
                return false;
            }
            let f = form.field();
            match spec.family {
                Family::NoEven2 => true,
                Family::NoEven3 => value == f.from_int(spec.part as i64),
                Family::NoPerp | Family::NoOdd => {
                    let want = if spec.eps == Some(1) {
                        SquareClass::Square
                    } else {
                        SquareClass::Nonsquare
                    };
                    f.square_class(value).ok() == Some(want)
                }
                Family::Nu => false,
            }
        }
    }
}

/// The vertex set `X` of the designated graph, in canonical order.
pub fn enumerate_vertices(spec: &GraphSpec, space: &Space) -> Result<Vec<Point>> {
    let points = match space {
        Space::Quadratic(form) => form.points(),
        Space::Hermitian(h) => h.points(),
    };
    Ok(points
        .into_iter()
        .filter(|p| is_vertex(spec, space, p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_vec(f: &Field, dim: usize, rng: &mut StdRng) -> Vec<Elem> {
        (0..dim).map(|_| Elem(rng.gen_range(0..f.order()))).collect()
    }

    #[test]
    fn elliptic_q2_r2_has_five_singular_points() {
        let f = Field::of_order(2).unwrap();
        let form = QuadraticForm::canonical(FormModel::Elliptic, f, 2).unwrap();
        // x1x2 + x3^2 + x3x4 + x4^2
        assert_eq!(form.terms().len(), 4);
        let pts = form.points();
        assert_eq!(pts.len(), 15);
        let singular = pts.iter().filter(|p| form.value(&p.0).is_zero()).count();
        assert_eq!(singular, 5);
    }

    #[test]
    fn parabolic_examples() {
        let f = Field::of_order(5).unwrap();
        let form = QuadraticForm::canonical(FormModel::Parabolic, f.clone(), 2).unwrap();
        assert_eq!(form.eval(&unit_vec(5, 0)).unwrap(), Elem::ZERO);
        assert_eq!(form.eval(&unit_vec(5, 2)).unwrap(), Elem::ONE);
        assert_eq!(form.polar_b(&unit_vec(5, 2), &unit_vec(5, 2)).unwrap(), Elem(2));
        assert!(matches!(
            form.eval(&unit_vec(4, 0)),
            Err(Error::DimensionMismatch { expected: 5, found: 4 })
        ));
    }

    #[test]
    fn hyperbolic_split_examples() {
        let f = Field::of_order(3).unwrap();
        let form = QuadraticForm::canonical(FormModel::HyperbolicSplit, f, 2).unwrap();
        // x = (1,0), y = (1,0)
        let v = vec![Elem(1), Elem(0), Elem(1), Elem(0)];
        assert_eq!(form.eval(&v).unwrap(), Elem::ONE);
        let e1 = vec![Elem(1), Elem(0), Elem(0), Elem(0)];
        let f1 = vec![Elem(0), Elem(0), Elem(1), Elem(0)];
        assert_eq!(form.polar_b(&e1, &f1).unwrap(), Elem::ONE);
    }

    #[test]
    fn homogeneity_and_bilinearity() {
        let mut rng = StdRng::seed_from_u64(7);
        let f5 = Field::of_order(5).unwrap();
        let form = QuadraticForm::canonical(FormModel::Parabolic, f5.clone(), 2).unwrap();
        for _ in 0..100 {
            let x = random_vec(&f5, 5, &mut rng);
            let two_x = scale_vec(&f5, Elem(2), &x);
            assert_eq!(form.value(&two_x), f5.mul(Elem(4), form.value(&x)));
        }
        let f3 = Field::of_order(3).unwrap();
        let form = QuadraticForm::canonical(FormModel::Hyperbolic, f3.clone(), 3).unwrap();
        for _ in 0..100 {
            let x = random_vec(&f3, 6, &mut rng);
            let y = random_vec(&f3, 6, &mut rng);
            let z = random_vec(&f3, 6, &mut rng);
            let lhs = form.polar_b(&add_vec(&f3, &x, &z), &y).unwrap();
            let rhs = f3.add(form.polar_b(&x, &y).unwrap(), form.polar_b(&z, &y).unwrap());
            assert_eq!(lhs, rhs);
            assert_eq!(form.polar(&x, &y), form.polar_b(&x, &y).unwrap());
            assert_eq!(form.polar_b(&x, &x).unwrap(), f3.add(form.value(&x), form.value(&x)));
        }
    }

    #[test]
    fn perp_of_singular_point() {
        let f = Field::of_order(5).unwrap();
        let form = QuadraticForm::canonical(FormModel::Parabolic, f.clone(), 2).unwrap();
        let s = Subspace::new(f, vec![unit_vec(5, 0)]).unwrap();
        let perp = form.perp(&s).unwrap();
        assert_eq!(perp.dim(), 4);
        assert!(perp.contains(&unit_vec(5, 0)));
    }

    #[test]
    fn perp_dimension_and_double_perp() {
        let mut rng = StdRng::seed_from_u64(11);
        let f = Field::of_order(3).unwrap();
        let form = QuadraticForm::canonical(FormModel::Parabolic, f.clone(), 2).unwrap();
        let mut checked = 0;
        while checked < 20 {
            let t = rng.gen_range(1..=4);
            let basis: Vec<_> = (0..t).map(|_| random_vec(&f, 5, &mut rng)).collect();
            let Ok(s) = Subspace::new(f.clone(), basis) else { continue };
            let perp = form.perp(&s).unwrap();
            assert_eq!(s.dim() + perp.dim(), 5);
            assert!(form.perp(&perp).unwrap().same_as(&s));
            checked += 1;
        }
    }

    #[test]
    fn totally_singular_examples() {
        let f = Field::of_order(5).unwrap();
        let form = QuadraticForm::canonical(FormModel::Parabolic, f.clone(), 2).unwrap();
        for t in 1..=2 {
            let s = Subspace::new(f.clone(), (0..t).map(|i| unit_vec(5, i)).collect()).unwrap();
            assert!(form.is_totally_singular(&s));
        }
        let s = Subspace::new(f.clone(), vec![unit_vec(5, 2)]).unwrap();
        assert!(!form.is_totally_singular(&s));
    }

    #[test]
    fn singular_checks_agree() {
        let mut rng = StdRng::seed_from_u64(3);
        let f = Field::of_order(3).unwrap();
        let form = QuadraticForm::canonical(FormModel::Hyperbolic, f.clone(), 3).unwrap();
        let flag = form.singular_flag_vectors();
        let mut done = 0;
        while done < 50 {
            // bias towards singular subspaces by mixing flag vectors
            let t = rng.gen_range(1..=3);
            let basis: Vec<_> = (0..t)
                .map(|_| {
                    if rng.gen_bool(0.7) {
                        let c = Elem(rng.gen_range(1..3));
                        let base = &flag[rng.gen_range(0..flag.len())];
                        let other = &flag[rng.gen_range(0..flag.len())];
                        add_vec(&f, &scale_vec(&f, c, base), other)
                    } else {
                        random_vec(&f, 6, &mut rng)
                    }
                })
                .collect();
            let Ok(s) = Subspace::new(f.clone(), basis) else { continue };
            assert_eq!(form.is_totally_singular(&s), form.is_totally_singular_enumerated(&s));
            done += 1;
        }
    }

    #[test]
    fn canonical_flags_are_totally_singular() {
        for (model, q, r) in [
            (FormModel::Parabolic, 3, 3),
            (FormModel::ParabolicSplit, 5, 2),
            (FormModel::Hyperbolic, 2, 3),
            (FormModel::HyperbolicSplit, 3, 3),
            (FormModel::Elliptic, 3, 3),
        ] {
            let f = Field::of_order(q).unwrap();
            let form = QuadraticForm::canonical(model, f.clone(), r).unwrap();
            let flag = form.singular_flag_vectors();
            assert_eq!(flag.len(), model.witt_index(r));
            for t in 1..=flag.len() {
                let s = Subspace::new(f.clone(), flag[..t].to_vec()).unwrap();
                assert!(form.is_totally_singular(&s), "{model:?} t={t}");
            }
        }
    }

    #[test]
    fn normalization() {
        let f = Field::of_order(5).unwrap();
        let v = vec![Elem(0), Elem(3), Elem(1)];
        let p = normalize_linear(&f, &v).unwrap();
        assert_eq!(p.0[1], Elem::ONE);
        assert_eq!(normalize_linear(&f, &p.0).unwrap(), p);
        for c in f.nonzero() {
            assert_eq!(normalize_linear(&f, &scale_vec(&f, c, &v)).unwrap(), p);
        }
        assert!(normalize_linear(&f, &[Elem::ZERO; 3]).is_none());
    }

    #[test]
    fn hermitian_identities() {
        let h = HermitianSpace::new(2, 3).unwrap();
        let big = h.big().clone();
        assert_eq!(h.norm_form(&[Elem::ONE, Elem::ONE]), Elem::ZERO);
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..500 {
            let a = random_vec(&big, 2, &mut rng);
            let b = random_vec(&big, 2, &mut rng);
            let (hab, ha) = h.hermitian_forms(&a, &b).unwrap();
            let (hba, _) = h.hermitian_forms(&b, &a).unwrap();
            assert_eq!(hab, h.mid().frobenius(hba, 1));
            let (haa, _) = h.hermitian_forms(&a, &a).unwrap();
            assert_eq!(haa, h.base_in_mid().embed(ha).unwrap());
        }
        for v in big.elements() {
            assert_eq!(h.norm_form(&[Elem::ZERO, v]), Elem::ZERO);
        }
        assert!(matches!(HermitianSpace::new(2, 2), Err(Error::UnsupportedParameters(_))));
        assert!(matches!(HermitianSpace::new(3, 3), Err(Error::UnsupportedParameters(_))));
    }

    #[test]
    fn hermitian_sesquilinear() {
        let h = HermitianSpace::new(2, 3).unwrap();
        let (big, mid) = (h.big().clone(), h.mid().clone());
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..200 {
            let a = random_vec(&big, 2, &mut rng);
            let b = random_vec(&big, 2, &mut rng);
            let c = random_vec(&big, 2, &mut rng);
            let lam = Elem(rng.gen_range(0..mid.order()));
            let lam_big = h.mid_in_big().embed(lam).unwrap();
            let lhs = h.form(&add_vec(&big, &scale_vec(&big, lam_big, &a), &b), &c);
            let rhs = mid.add(mid.mul(lam, h.form(&a, &c)), h.form(&b, &c));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rescaling_preserves_square_class() {
        let f = Field::of_order(5).unwrap();
        let form = QuadraticForm::canonical(FormModel::Parabolic, f.clone(), 2).unwrap();
        for p in form.points().iter().step_by(7) {
            let base = f.square_class(form.value(&p.0)).unwrap();
            for c in f.nonzero() {
                let v = scale_vec(&f, c, &p.0);
                assert_eq!(f.square_class(form.value(&v)).unwrap(), base);
            }
        }
    }
}
