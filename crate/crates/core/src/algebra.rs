//! Finite-dimensional associative unital algebras over `F_p`, given by
//! structure constants, and the catalog of local algebras the rest of the
//! crate computes with.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{column_span, in_span, FieldMatrix, PrimeField};

/// Upper bound on algebra dimension; keeps the structure-constant checks cheap.
pub const MAX_ALGEBRA_DIM: usize = 256;

/// A catalog ring, as written in ring-spec strings such as `local_sq_zero(2,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RingSpec {
    /// `k[x_1..x_n] / (x_1..x_n)^2`
    LocalSqZero { n: usize, p: u64 },
    /// `F_p[Z/m]` with `m` a power of `p`
    CyclicGroup { m: usize, p: u64 },
    /// `F_p[x] / (x^e)`
    TruncPoly { e: usize, p: u64 },
}

impl RingSpec {
    pub fn p(&self) -> u64 {
        match *self {
            RingSpec::LocalSqZero { p, .. }
            | RingSpec::CyclicGroup { p, .. }
            | RingSpec::TruncPoly { p, .. } => p,
        }
    }

    pub fn build(&self) -> Result<Arc<Algebra>> {
        match *self {
            RingSpec::LocalSqZero { n, p } => mk_local_sq_zero(n, p),
            RingSpec::CyclicGroup { m, p } => mk_cyclic_group_algebra(m, p),
            RingSpec::TruncPoly { e, p } => mk_trunc_poly(e, p),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingSpec::LocalSqZero { n, p } => write!(f, "local_sq_zero({n},{p})"),
            RingSpec::CyclicGroup { m, p } => write!(f, "cyclic_group({m},{p})"),
            RingSpec::TruncPoly { e, p } => write!(f, "trunc_poly({e},{p})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid ring spec `{s}`"));
        let open = compact.find('(').ok_or_else(bad)?;
        if !compact.ends_with(')') {
            return Err(bad());
        }
        let name = &compact[..open];
        let args: Vec<&str> = compact[open + 1..compact.len() - 1].split(',').collect();
        if args.len() != 2 || args.iter().any(|a| a.is_empty() || !a.bytes().all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        let a: usize = args[0].parse().map_err(|_| bad())?;
        let p: u64 = args[1].parse().map_err(|_| bad())?;
        match name {
            "local_sq_zero" => Ok(RingSpec::LocalSqZero { n: a, p }),
            "cyclic_group" => Ok(RingSpec::CyclicGroup { m: a, p }),
            "trunc_poly" => Ok(RingSpec::TruncPoly { e: a, p }),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for RingSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RingSpec> for String {
    fn from(r: RingSpec) -> String {
        r.to_string()
    }
}

/// A finite-dimensional associative unital algebra over `F_p`.
///
/// Multiplication is stored sparsely: `products[i * dim + j]` lists the
/// nonzero structure constants `(k, c)` with `e_i e_j = sum_k c e_k`.
#[derive(Clone)]
pub struct Algebra {
    spec: RingSpec,
    field: PrimeField,
    dim: usize,
    basis_labels: Vec<String>,
    products: Vec<Vec<(usize, u64)>>,
    unit_index: usize,
    generators: Vec<usize>,
    generator_labels: Vec<String>,
    radical_basis: FieldMatrix,
    commutative: bool,
    /// For each basis element, its expansion `sum c * w` over words `w` in
    /// the generators (a word is a list of generator positions).
    basis_words: Vec<Vec<(u64, Vec<usize>)>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.spec, self.dim)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.field == other.field && self.products == other.products
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Assembles an algebra from structure constants and validates it.
    #[allow(clippy::too_many_arguments)]
    fn new(
        spec: RingSpec,
        field: PrimeField,
        basis_labels: Vec<String>,
        products: Vec<Vec<(usize, u64)>>,
        unit_index: usize,
        generators: Vec<usize>,
        generator_labels: Vec<String>,
        radical_basis: FieldMatrix,
    ) -> Result<Algebra> {
        let dim = basis_labels.len();
        if dim == 0 || dim > MAX_ALGEBRA_DIM {
            return Err(Error::InvalidParameters(format!("algebra dimension {dim} out of range")));
        }
        let mut a = Algebra {
            spec,
            field,
            dim,
            basis_labels,
            products,
            unit_index,
            generators,
            generator_labels,
            radical_basis: column_span(&radical_basis),
            commutative: false,
            basis_words: Vec::new(),
        };
        a.verify()?;
        a.commutative = (0..dim).all(|i| (0..dim).all(|j| a.products[i * dim + j] == a.products[j * dim + i]));
        a.basis_words = a.expand_basis_in_words()?;
        Ok(a)
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    /// Basis indices of the algebra generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    /// Columns span the Jacobson radical (echelonized).
    pub fn radical_basis(&self) -> &FieldMatrix {
        &self.radical_basis
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_local(&self) -> bool {
        self.dim - self.radical_basis.cols() == 1
    }

    pub(crate) fn basis_words(&self) -> &[Vec<(u64, Vec<usize>)>] {
        &self.basis_words
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.products[i * self.dim + j]
            .iter()
            .find(|&&(kk, _)| kk == k)
            .map_or(0, |&(_, c)| c)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Product of two algebra elements given in basis coordinates.
    pub fn mul_elements(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let s = f.mul(ai, bj);
                for &(k, c) in &self.products[i * self.dim + j] {
                    out[k] = f.add(out[k], f.mul(s, c));
                }
            }
        }
        out
    }

    /// Matrix of `v -> a * v` on the algebra itself.
    pub fn left_mult_matrix(&self, a: &[u64]) -> FieldMatrix {
        let cols: Vec<Vec<u64>> = (0..self.dim)
            .map(|j| self.mul_elements(a, &self.basis_vector(j)))
            .collect();
        FieldMatrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `v -> v * a` on the algebra itself.
    pub fn right_mult_matrix(&self, a: &[u64]) -> FieldMatrix {
        let cols: Vec<Vec<u64>> = (0..self.dim)
            .map(|j| self.mul_elements(&self.basis_vector(j), a))
            .collect();
        FieldMatrix::from_columns(self.field, self.dim, &cols)
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim;
        let f = self.field;
        if self.products.len() != d * d {
            return Err(Error::AlgebraInvariant("structure constant table has wrong size".into()));
        }
        if self.unit_index >= d {
            return Err(Error::AlgebraInvariant("unit index out of range".into()));
        }
        if self.generators.iter().any(|&g| g >= d) || self.generators.len() != self.generator_labels.len() {
            return Err(Error::AlgebraInvariant("bad generator list".into()));
        }
        if self.radical_basis.rows() != d || self.radical_basis.field() != f {
            return Err(Error::AlgebraInvariant("radical basis has wrong shape".into()));
        }
        let u = self.unit_index;
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.products[u * d + i] != vec![(i, 1)] || self.products[i * d + u] != vec![(i, 1)] {
                return Err(Error::AlgebraInvariant(format!(
                    "unit does not act as identity on {}",
                    self.basis_labels[i]
                )));
            }
            debug_assert_eq!(self.mul_elements(&self.basis_vector(u), &e), e);
        }
        for i in 0..d {
            for j in 0..d {
                let eij = sparse_to_dense(&self.products[i * d + j], d, f);
                for k in 0..d {
                    let lhs = self.mul_elements(&eij, &self.basis_vector(k));
                    let ejk = sparse_to_dense(&self.products[j * d + k], d, f);
                    let rhs = self.mul_elements(&self.basis_vector(i), &ejk);
                    if lhs != rhs {
                        return Err(Error::AlgebraInvariant(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis_labels[i], self.basis_labels[j], self.basis_labels[k]
                        )));
                    }
                }
            }
        }
        self.verify_radical()
    }

    fn verify_radical(&self) -> Result<()> {
        let rad = &self.radical_basis;
        let r = rad.cols();
        if r >= self.dim {
            return Err(Error::AlgebraInvariant("radical is the whole algebra".into()));
        }
        // Two-sided ideal.
        for c in 0..r {
            let v = rad.column(c);
            for i in 0..self.dim {
                let e = self.basis_vector(i);
                for prod in [self.mul_elements(&e, &v), self.mul_elements(&v, &e)] {
                    if !in_span(rad, &FieldMatrix::column_vector(self.field, &prod)) {
                        return Err(Error::AlgebraInvariant("radical is not a two-sided ideal".into()));
                    }
                }
            }
        }
        // Nilpotent: rad^(k) shrinks to zero within dim steps.
        let mut power = rad.clone();
        for _ in 0..=self.dim {
            if power.cols() == 0 {
                return Ok(());
            }
            let mut cols = Vec::new();
            for a in 0..power.cols() {
                for b in 0..r {
                    cols.push(self.mul_elements(&power.column(a), &rad.column(b)));
                }
            }
            power = column_span(&FieldMatrix::from_columns(self.field, self.dim, &cols));
        }
        Err(Error::AlgebraInvariant("radical is not nilpotent".into()))
    }

    /// Breadth-first search over words in the generators until their values
    /// span the algebra, then expresses each basis element in those words.
    fn expand_basis_in_words(&self) -> Result<Vec<Vec<(u64, Vec<usize>)>>> {
        let d = self.dim;
        let f = self.field;
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut values: Vec<Vec<u64>> = vec![self.basis_vector(self.unit_index)];
        let mut frontier = 0;
        while values.len() < d && frontier < words.len() {
            let (w, v) = (words[frontier].clone(), values[frontier].clone());
            frontier += 1;
            for (gi, &g) in self.generators.iter().enumerate() {
                let nv = self.mul_elements(&v, &self.basis_vector(g));
                let span = FieldMatrix::from_columns(f, d, &values);
                if !in_span(&span, &FieldMatrix::column_vector(f, &nv)) {
                    let mut nw = w.clone();
                    nw.push(gi);
                    words.push(nw);
                    values.push(nv);
                }
            }
        }
        if values.len() < d {
            return Err(Error::AlgebraInvariant("generators do not generate the algebra".into()));
        }
        let span = FieldMatrix::from_columns(f, d, &values);
        let coeffs = span
            .solve(&FieldMatrix::identity(f, d))?
            .expect("words span the algebra");
        Ok((0..d)
            .map(|b| {
                (0..d)
                    .filter(|&w| coeffs.get(w, b) != 0)
                    .map(|w| (coeffs.get(w, b), words[w].clone()))
                    .collect()
            })
            .collect())
    }
}

fn sparse_to_dense(s: &[(usize, u64)], d: usize, f: PrimeField) -> Vec<u64> {
    let mut v = vec![0; d];
    for &(k, c) in s {
        v[k] = f.add(v[k], c);
    }
    v
}

fn variable_labels(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// `k[x_1..x_n] / (x_1..x_n)^2`: basis `{1, x_1, .., x_n}`, all products of
/// generators zero.
pub fn mk_local_sq_zero(n: usize, p: u64) -> Result<Arc<Algebra>> {
    let field = PrimeField::new(p)?;
    if n == 0 || n + 1 > MAX_ALGEBRA_DIM {
        return Err(Error::InvalidParameters(format!("local_sq_zero needs 1 <= n < {MAX_ALGEBRA_DIM}, got {n}")));
    }
    let d = n + 1;
    let vars = variable_labels(n);
    let mut labels = vec!["1".to_string()];
    labels.extend(vars.iter().cloned());
    let mut products = vec![Vec::new(); d * d];
    for i in 0..d {
        products[i] = vec![(i, 1)];
        products[i * d] = vec![(i, 1)];
    }
    let mut rad = FieldMatrix::zeros(field, d, n);
    for i in 0..n {
        rad.set(i + 1, i, 1);
    }
    Algebra::new(
        RingSpec::LocalSqZero { n, p },
        field,
        labels,
        products,
        0,
        (1..d).collect(),
        vars,
        rad,
    )
    .map(Arc::new)
}

/// The group algebra `F_p[Z/m]` on basis `1, s, .., s^(m-1)`; requires `m`
/// to be a power of `p` so that the algebra is local.
pub fn mk_cyclic_group_algebra(m: usize, p: u64) -> Result<Arc<Algebra>> {
    let field = PrimeField::new(p)?;
    if m == 0 || m > MAX_ALGEBRA_DIM {
        return Err(Error::InvalidParameters(format!("group order {m} out of range")));
    }
    let mut q = m;
    while q % p as usize == 0 {
        q /= p as usize;
    }
    if q != 1 {
        return Err(Error::InvalidParameters(format!("group order {m} is not a power of {p}")));
    }
    let labels: Vec<String> = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "s".to_string(),
            _ => format!("s^{i}"),
        })
        .collect();
    let mut products = vec![Vec::new(); m * m];
    for i in 0..m {
        for j in 0..m {
            products[i * m + j] = vec![((i + j) % m, 1)];
        }
    }
    // Augmentation ideal: s^i - 1.
    let mut rad = FieldMatrix::zeros(field, m, m - 1);
    for i in 1..m {
        rad.set(i, i - 1, 1);
        rad.set(0, i - 1, field.neg(1));
    }
    let generators = if m == 1 { vec![] } else { vec![1] };
    let generator_labels = if m == 1 { vec![] } else { vec!["s".to_string()] };
    Algebra::new(
        RingSpec::CyclicGroup { m, p },
        field,
        labels,
        products,
        0,
        generators,
        generator_labels,
        rad,
    )
    .map(Arc::new)
}

/// `F_p[x]/(x^e)` on basis `1, x, .., x^(e-1)`.
pub fn mk_trunc_poly(e: usize, p: u64) -> Result<Arc<Algebra>> {
    let field = PrimeField::new(p)?;
    if e < 2 || e > MAX_ALGEBRA_DIM {
        return Err(Error::InvalidParameters(format!("truncation {e} out of range (need e >= 2)")));
    }
    let labels: Vec<String> = (0..e)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut products = vec![Vec::new(); e * e];
    for i in 0..e {
        for j in 0..e {
            if i + j < e {
                products[i * e + j] = vec![(i + j, 1)];
            }
        }
    }
    let mut rad = FieldMatrix::zeros(field, e, e - 1);
    for i in 1..e {
        rad.set(i, i - 1, 1);
    }
    Algebra::new(
        RingSpec::TruncPoly { e, p },
        field,
        labels,
        products,
        0,
        vec![1],
        vec!["x".to_string()],
        rad,
    )
    .map(Arc::new)
}

/// True iff the regular left module is injective, i.e. projectives and
/// injectives coincide.
pub fn is_quasi_frobenius(a: &Arc<Algebra>) -> bool {
    let r = crate::modrep::Module::regular(a, crate::modrep::Side::Left);
    crate::modrep::is_injective(&r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_spec_round_trip_and_whitespace() {
        let r: RingSpec = " local_sq_zero( 2 , 3 )".parse().unwrap();
        assert_eq!(r, RingSpec::LocalSqZero { n: 2, p: 3 });
        assert_eq!(r.to_string(), "local_sq_zero(2,3)");
        assert!("Local_sq_zero(2,3)".parse::<RingSpec>().is_err());
        assert!("trunc_poly(2,-3)".parse::<RingSpec>().is_err());
        assert!("trunc_poly(2)".parse::<RingSpec>().is_err());
    }

    #[test]
    fn local_sq_zero_shapes() {
        let a = mk_local_sq_zero(1, 2).unwrap();
        assert_eq!(a.dim(), 2);
        let a = mk_local_sq_zero(2, 2).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.generator_labels(), ["x", "y"]);
        for &g in a.generators() {
            for &h in a.generators() {
                assert!(a.mul_elements(&a.basis_vector(g), &a.basis_vector(h)).iter().all(|&c| c == 0));
            }
        }
        let a = mk_local_sq_zero(3, 3).unwrap();
        assert_eq!((a.dim(), a.radical_basis().cols()), (4, 3));
        assert!(a.is_local() && a.is_commutative());
        assert!(mk_local_sq_zero(0, 2).is_err());
        assert!(mk_local_sq_zero(2, 4).is_err());
    }

    #[test]
    fn cyclic_group_requires_p_power() {
        assert_eq!(mk_cyclic_group_algebra(5, 5).unwrap().dim(), 5);
        assert_eq!(mk_cyclic_group_algebra(4, 2).unwrap().radical_basis().cols(), 3);
        assert!(mk_cyclic_group_algebra(6, 2).is_err());
        assert!(mk_cyclic_group_algebra(3, 2).is_err());
    }

    #[test]
    fn trunc_poly_basics() {
        let a = mk_trunc_poly(3, 2).unwrap();
        let x = a.basis_vector(1);
        let x2 = a.mul_elements(&x, &x);
        assert_eq!(x2, a.basis_vector(2));
        assert!(a.mul_elements(&x2, &x).iter().all(|&c| c == 0));
        assert!(mk_trunc_poly(1, 2).is_err());
    }

    #[test]
    fn bad_radical_is_rejected() {
        let f = PrimeField::new(2).unwrap();
        // Claim the whole unit line is radical: not nilpotent.
        let mut rad = FieldMatrix::zeros(f, 2, 1);
        rad.set(0, 0, 1);
        let products = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![]];
        let err = Algebra::new(
            RingSpec::TruncPoly { e: 2, p: 2 },
            f,
            vec!["1".into(), "x".into()],
            products,
            0,
            vec![1],
            vec!["x".into()],
            rad,
        )
        .unwrap_err();
        assert!(matches!(err, Error::AlgebraInvariant(_)));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let f = PrimeField::new(2).unwrap();
        // x*x = 1 + x with x*1 = x but pretend (x*x)*x != x*(x*x) by making x*x asymmetric.
        let products = vec![
            vec![(0, 1)], vec![(1, 1)], vec![(2, 1)],
            vec![(1, 1)], vec![(2, 1)], vec![],
            vec![(2, 1)], vec![(1, 1)], vec![],
        ];
        let mut rad = FieldMatrix::zeros(f, 3, 2);
        rad.set(1, 0, 1);
        rad.set(2, 1, 1);
        let err = Algebra::new(
            RingSpec::TruncPoly { e: 3, p: 2 },
            f,
            vec!["1".into(), "x".into(), "z".into()],
            products,
            0,
            vec![1],
            vec!["x".into()],
            rad,
        )
        .unwrap_err();
        assert!(matches!(err, Error::AlgebraInvariant(_)));
    }
}
