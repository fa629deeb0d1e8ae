//! Windowed chain complexes, Hom-complexes, chain homotopy, degreewise
//! split extensions, and tag-driven covering and filtration algorithms.
//!
//! A [`WindowedComplex`] stores the terms `X_lo .. X_hi` of a complex and the
//! differentials `d_n: X_n -> X_{n-1}` for `lo < n <= hi`. By default it is a
//! truncation of an unbounded complex and only interior degrees
//! `lo < n < hi` are meaningful. A complex flagged `bounded` is zero outside
//! its window; such complexes can be padded with zero terms freely, and
//! their Hom-complexes against truncations have a computable faithful range.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{column_span, in_span, intersect_spans, FieldMatrix, PrimeField};
use crate::modrep::{
    direct_sum, hom_space_matrix, quotient, same_algebra, submodule, tensor_over_r, tensor_with_morphism, Module,
    ModuleFile, Morphism, Side,
};

/// A labelled direct summand occupying coordinates `offset .. offset + dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub label: String,
    pub offset: usize,
    pub dim: usize,
}

/// Tag indices per degree, indexed by `n - lo`.
pub type Selection = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedComplex {
    lo: i64,
    hi: i64,
    terms: Vec<Module>,
    diffs: Vec<Morphism>,
    bounded: bool,
    tags: Option<Vec<Vec<Summand>>>,
}

impl WindowedComplex {
    /// `terms[i]` sits in degree `lo + i`; `diffs[i]` is `d_{lo+i+1}`.
    pub fn new(lo: i64, terms: Vec<Module>, diffs: Vec<Morphism>, bounded: bool) -> Result<WindowedComplex> {
        if terms.len() < 2 {
            return Err(Error::ComplexInvariant("window needs lo < hi".into()));
        }
        if diffs.len() != terms.len() - 1 {
            return Err(Error::ComplexInvariant(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        let hi = lo + terms.len() as i64 - 1;
        let c = WindowedComplex {
            lo,
            hi,
            terms,
            diffs,
            bounded,
            tags: None,
        };
        c.verify()?;
        Ok(c)
    }

    fn verify(&self) -> Result<()> {
        let first = &self.terms[0];
        for t in &self.terms {
            if !same_algebra(t.algebra(), first.algebra()) || t.side() != first.side() {
                return Err(Error::ComplexInvariant("terms over different algebras or sides".into()));
            }
        }
        for (i, d) in self.diffs.iter().enumerate() {
            if d.source() != &self.terms[i + 1] || d.target() != &self.terms[i] {
                return Err(Error::ComplexInvariant(format!(
                    "d_{} has the wrong source or target",
                    self.lo + i as i64 + 1
                )));
            }
            Morphism::new(d.source(), d.target(), d.matrix().clone())
                .map_err(|e| Error::ComplexInvariant(format!("d_{}: {e}", self.lo + i as i64 + 1)))?;
        }
        for i in 1..self.diffs.len() {
            if !self.diffs[i - 1].matrix().mul(self.diffs[i].matrix()).is_zero() {
                return Err(Error::ComplexInvariant(format!(
                    "d_{} d_{} != 0",
                    self.lo + i as i64,
                    self.lo + i as i64 + 1
                )));
            }
        }
        Ok(())
    }

    /// Attaches a direct-sum decomposition of every term.
    pub fn with_tags(mut self, tags: Vec<Vec<Summand>>) -> Result<WindowedComplex> {
        if tags.len() != self.terms.len() {
            return Err(Error::ComplexInvariant("one tag list per degree required".into()));
        }
        for (t, m) in tags.iter().zip(&self.terms) {
            let blocks: Vec<(usize, usize)> = t.iter().map(|s| (s.offset, s.dim)).collect();
            check_blocks(&blocks, m.dim())?;
            for a in m.action() {
                for (i, &(oi, di)) in blocks.iter().enumerate() {
                    for (j, &(oj, dj)) in blocks.iter().enumerate() {
                        if i != j && !a.block(oi, oj, di, dj).is_zero() {
                            return Err(Error::ComplexInvariant(
                                "summand tags are not a decomposition into submodules".into(),
                            ));
                        }
                    }
                }
            }
        }
        self.tags = Some(tags);
        Ok(self)
    }

    /// `S^n(M)`: `M` in degree `n`, zero-padded on both sides.
    pub fn sphere(n: i64, m: &Module) -> WindowedComplex {
        let z = Module::zero(m.algebra(), m.side());
        let terms = vec![z.clone(), m.clone(), z.clone()];
        let diffs = vec![Morphism::zero(m, &z), Morphism::zero(&z, m)];
        WindowedComplex::new(n - 1, terms, diffs, true).expect("sphere")
    }

    /// `D^n(M)`: `M` in degrees `n` and `n - 1` with identity differential.
    pub fn disk(n: i64, m: &Module) -> WindowedComplex {
        let z = Module::zero(m.algebra(), m.side());
        let terms = vec![z.clone(), m.clone(), m.clone(), z.clone()];
        let diffs = vec![Morphism::zero(m, &z), Morphism::identity(m), Morphism::zero(&z, m)];
        WindowedComplex::new(n - 2, terms, diffs, true).expect("disk")
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.terms[0].algebra()
    }

    pub fn side(&self) -> Side {
        self.terms[0].side()
    }

    pub fn field(&self) -> PrimeField {
        self.terms[0].field()
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn diffs(&self) -> &[Morphism] {
        &self.diffs
    }

    pub fn tags(&self) -> Option<&[Vec<Summand>]> {
        self.tags.as_deref()
    }

    pub fn interior_degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo + 1..=self.hi - 1
    }

    pub fn term(&self, n: i64) -> Option<&Module> {
        (self.lo..=self.hi).contains(&n).then(|| &self.terms[(n - self.lo) as usize])
    }

    /// `d_n`, if both ends lie in the window.
    pub fn diff(&self, n: i64) -> Option<&Morphism> {
        (self.lo < n && n <= self.hi).then(|| &self.diffs[(n - self.lo - 1) as usize])
    }

    /// Term in degree `n`, treating a bounded complex as zero outside its
    /// window; `None` when the degree is unknown.
    pub fn module_at(&self, n: i64) -> Option<Module> {
        match self.term(n) {
            Some(m) => Some(m.clone()),
            None if self.bounded => Some(Module::zero(self.algebra(), self.side())),
            None => None,
        }
    }

    /// Matrix of `d_n` with the same convention as [`Self::module_at`].
    fn diff_matrix_at(&self, n: i64) -> Option<FieldMatrix> {
        if let Some(d) = self.diff(n) {
            return Some(d.matrix().clone());
        }
        let (a, b) = (self.module_at(n)?, self.module_at(n - 1)?);
        Some(FieldMatrix::zeros(self.field(), b.dim(), a.dim()))
    }

    /// Degrees carrying a nonzero term.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = (self.lo..=self.hi).filter(|&n| self.term(n).unwrap().dim() > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Extends a bounded complex by zero terms to the window `[lo, hi]`.
    pub fn padded(&self, lo: i64, hi: i64) -> Result<WindowedComplex> {
        if !self.bounded {
            return Err(Error::Precondition("only bounded complexes can be padded".into()));
        }
        if lo > self.lo || hi < self.hi {
            return Err(Error::Precondition("padding cannot shrink the window".into()));
        }
        let terms: Vec<Module> = (lo..=hi).map(|n| self.module_at(n).unwrap()).collect();
        let diffs: Vec<Morphism> = (lo + 1..=hi)
            .map(|n| match self.diff(n) {
                Some(d) => d.clone(),
                None => Morphism::zero(&terms[(n - lo) as usize], &terms[(n - lo - 1) as usize]),
            })
            .collect();
        let mut c = WindowedComplex::new(lo, terms, diffs, true)?;
        if let Some(tags) = &self.tags {
            let t = (lo..=hi)
                .map(|n| {
                    if (self.lo..=self.hi).contains(&n) {
                        tags[(n - self.lo) as usize].clone()
                    } else {
                        vec![]
                    }
                })
                .collect();
            c = c.with_tags(t)?;
        }
        Ok(c)
    }

    /// Underlying complex of vector spaces.
    pub fn underlying(&self) -> VectorComplex {
        VectorComplex {
            field: self.field(),
            lo: self.lo,
            hi: self.hi,
            dims: self.terms.iter().map(Module::dim).collect(),
            diffs: self.diffs.iter().map(|d| d.matrix().clone()).collect(),
            faithful: self.assertable(),
        }
    }

    /// Degrees where homology statements are faithful: the interior, or the
    /// whole window for a bounded complex.
    pub fn assertable(&self) -> (i64, i64) {
        if self.bounded {
            (self.lo, self.hi)
        } else {
            (self.lo + 1, self.hi - 1)
        }
    }

    pub fn tag_counts(&self) -> Option<Vec<usize>> {
        self.tags.as_ref().map(|t| t.iter().map(Vec::len).collect())
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            ring: self.algebra().spec(),
            side: self.side(),
            lo: self.lo,
            hi: self.hi,
            bounded: self.bounded,
            terms: self.terms.iter().map(Module::to_file).collect(),
            differentials: self
                .diffs
                .iter()
                .map(|d| d.matrix().to_rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect())
                .collect(),
            tags: self.tags.clone(),
        }
    }

    pub fn from_file(file: &ComplexFile) -> Result<WindowedComplex> {
        let algebra = file.ring.build()?;
        if file.hi <= file.lo || file.terms.len() as i64 != file.hi - file.lo + 1 {
            return Err(Error::ComplexInvariant("window does not match the number of terms".into()));
        }
        if file.differentials.len() != file.terms.len() - 1 {
            return Err(Error::ComplexInvariant("wrong number of differentials".into()));
        }
        let terms: Vec<Module> = file
            .terms
            .iter()
            .map(|t| {
                if t.side != file.side {
                    return Err(Error::ComplexInvariant("term side differs from complex side".into()));
                }
                Module::from_file_over(&algebra, t)
            })
            .collect::<Result<_>>()?;
        let f = algebra.field();
        let diffs: Vec<Morphism> = file
            .differentials
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                let (src, tgt) = (&terms[i + 1], &terms[i]);
                if rows.len() != tgt.dim() || rows.iter().any(|r| r.len() != src.dim()) {
                    return Err(Error::ComplexInvariant(format!("d_{} has the wrong shape", file.lo + i as i64 + 1)));
                }
                Morphism::new(src, tgt, FieldMatrix::from_rows_with_cols(f, rows, src.dim()))
            })
            .collect::<Result<_>>()?;
        let c = WindowedComplex::new(file.lo, terms, diffs, file.bounded)?;
        match &file.tags {
            Some(t) => c.with_tags(t.clone()),
            None => Ok(c),
        }
    }
}

fn check_blocks(blocks: &[(usize, usize)], dim: usize) -> Result<()> {
    let mut next = 0;
    for &(o, d) in blocks {
        if o != next || d == 0 {
            return Err(Error::ComplexInvariant("summands must be nonempty, contiguous and in order".into()));
        }
        next += d;
    }
    if next != dim {
        return Err(Error::ComplexInvariant("summands do not cover the term".into()));
    }
    Ok(())
}

/// On-disk JSON form of a windowed complex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub ring: crate::algebra::RingSpec,
    pub side: Side,
    pub lo: i64,
    pub hi: i64,
    #[serde(default)]
    pub bounded: bool,
    pub terms: Vec<ModuleFile>,
    /// `differentials[i]` is `d_{lo+i+1}` as row-major rows.
    pub differentials: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<Vec<Summand>>>,
}

/// A nonzero homology class: a cycle that is not a boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Which complex the class lives in, e.g. `"X"` or `"Hom(J,X)"`.
    pub complex: String,
    pub degree: i64,
    pub vector: Vec<u64>,
}

/// A complex of finite-dimensional vector spaces with an explicit range of
/// faithful degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorComplex {
    field: PrimeField,
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
    /// `diffs[i]` is `d_{lo+i+1}`.
    diffs: Vec<FieldMatrix>,
    faithful: (i64, i64),
}

impl VectorComplex {
    pub fn new(field: PrimeField, lo: i64, dims: Vec<usize>, diffs: Vec<FieldMatrix>, faithful: (i64, i64)) -> Result<Self> {
        let hi = lo + dims.len() as i64 - 1;
        if diffs.len() + 1 != dims.len() {
            return Err(Error::ComplexInvariant("wrong number of differentials".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::ComplexInvariant("differential has the wrong shape".into()));
            }
            if i > 0 && !diffs[i - 1].mul(d).is_zero() {
                return Err(Error::ComplexInvariant("d^2 != 0".into()));
            }
        }
        Ok(VectorComplex {
            field,
            lo,
            hi,
            dims,
            diffs,
            faithful,
        })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// Degrees where homology is meaningful (possibly empty).
    pub fn faithful(&self) -> (i64, i64) {
        self.faithful
    }

    pub fn faithful_degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.faithful.0..=self.faithful.1
    }

    pub fn dim(&self, n: i64) -> usize {
        if (self.lo..=self.hi).contains(&n) {
            self.dims[(n - self.lo) as usize]
        } else {
            0
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_n` (zero outside the stored range).
    pub fn diff(&self, n: i64) -> FieldMatrix {
        if self.lo < n && n <= self.hi {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            FieldMatrix::zeros(self.field, self.dim(n - 1), self.dim(n))
        }
    }

    pub fn diffs(&self) -> &[FieldMatrix] {
        &self.diffs
    }

    fn check_degree(&self, n: i64) -> Result<()> {
        if n < self.faithful.0 || n > self.faithful.1 {
            return Err(Error::NotInterior {
                degree: n,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }

    /// Basis of `Z_n` as columns.
    pub fn cycles(&self, n: i64) -> FieldMatrix {
        self.diff(n).kernel_basis()
    }

    /// Basis of `B_n` as columns.
    pub fn boundaries(&self, n: i64) -> FieldMatrix {
        column_span(&self.diff(n + 1))
    }

    pub fn homology_dim(&self, n: i64) -> Result<usize> {
        self.check_degree(n)?;
        let d_out = self.diff(n).rank();
        let d_in = self.diff(n + 1).rank();
        Ok(self.dim(n) - d_out - d_in)
    }

    /// First row of the reduced echelon form of `Z_n` (lowest leading
    /// coordinate, leading coefficient 1) that is not a boundary.
    pub fn witness_at(&self, n: i64) -> Result<Option<Vec<u64>>> {
        self.check_degree(n)?;
        let z = self.cycles(n);
        let b = self.boundaries(n);
        let (rows, pivots) = z.transpose().rref();
        for i in 0..pivots.len() {
            let v = rows.row(i).to_vec();
            if !in_span(&b, &FieldMatrix::column_vector(self.field, &v)) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Lowest faithful degree with nonzero homology, with its witness.
    pub fn first_failure(&self, name: &str) -> Option<Witness> {
        self.faithful_degrees().find_map(|n| {
            self.witness_at(n).unwrap().map(|vector| Witness {
                complex: name.to_string(),
                degree: n,
                vector,
            })
        })
    }

    pub fn is_exact(&self) -> bool {
        self.faithful_degrees().all(|n| self.homology_dim(n).unwrap() == 0)
    }

    pub fn homology_table(&self) -> Vec<(i64, usize)> {
        self.faithful_degrees().map(|n| (n, self.homology_dim(n).unwrap())).collect()
    }

    /// Re-checks that `w` is a cycle, not a boundary, in a faithful degree.
    pub fn verify_witness(&self, w: &Witness) -> bool {
        if self.check_degree(w.degree).is_err() || w.vector.len() != self.dim(w.degree) {
            return false;
        }
        let v = FieldMatrix::column_vector(self.field, &w.vector);
        self.diff(w.degree).mul(&v).is_zero() && !v.is_zero() && !in_span(&self.diff(w.degree + 1), &v)
    }
}

/// Homology of `X` at an assertable degree, with its induced module structure.
pub fn homology_at(x: &WindowedComplex, n: i64) -> Result<(usize, Module)> {
    let (a, b) = x.assertable();
    if n < a || n > b {
        return Err(Error::NotInterior {
            degree: n,
            lo: x.lo,
            hi: x.hi,
        });
    }
    let xn = x.module_at(n).unwrap();
    let d_out = x.diff_matrix_at(n).unwrap_or_else(|| FieldMatrix::zeros(x.field(), 0, xn.dim()));
    let d_in = x.diff_matrix_at(n + 1).unwrap_or_else(|| FieldMatrix::zeros(x.field(), xn.dim(), 0));
    let (z, inc) = submodule(&xn, &d_out.kernel_basis())?;
    let b_in_z = inc
        .matrix()
        .solve(&d_in)?
        .ok_or_else(|| Error::ComplexInvariant("boundaries are not cycles".into()))?;
    let (h, _) = quotient(&z, &b_in_z)?;
    Ok((h.dim(), h))
}

/// Layout of one degree of a Hom-complex: for each `k`, a basis of
/// `Hom(X_k, Y_{k+m})` as vectorized columns.
#[derive(Clone, Debug)]
pub struct HomDegree {
    pub components: Vec<(i64, FieldMatrix)>,
}

impl HomDegree {
    fn dim(&self) -> usize {
        self.components.iter().map(|(_, h)| h.cols()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: VectorComplex,
    /// Indexed by `m - complex.window().0`.
    pub layout: Vec<HomDegree>,
}

/// `Hom(X, Y)` with `(delta_m f)_k = d_{k+m} f_k - (-1)^m f_{k-1} d_k`.
///
/// At least one argument must be bounded; the result's faithful degrees are
/// those whose homology does not depend on terms outside the windows.
pub fn hom_complex(x: &WindowedComplex, y: &WindowedComplex) -> Result<HomComplex> {
    if !same_algebra(x.algebra(), y.algebra()) || x.side() != y.side() {
        return Err(Error::Incompatible("Hom-complex of complexes over different algebras or sides".into()));
    }
    let (m_lo, m_hi) = match (x.bounded, y.bounded) {
        (true, true) => (y.lo - x.hi, y.hi - x.lo),
        (true, false) => {
            let (a, b) = x.support().unwrap_or((x.lo, x.lo));
            (y.lo + 1 - a, y.hi - 1 - b)
        }
        (false, true) => {
            let (a, b) = y.support().unwrap_or((y.lo, y.lo));
            (b - x.hi + 1, a - x.lo - 1)
        }
        (false, false) => {
            return Err(Error::Precondition(
                "Hom-complex of two truncated complexes has no faithful degrees".into(),
            ))
        }
    };
    let lo = m_lo - 1;
    let hi = (m_hi + 1).max(lo + 1);
    let f = x.field();
    let layout: Vec<HomDegree> = (lo..=hi)
        .map(|m| {
            let components = (x.lo..=x.hi)
                .filter_map(|k| {
                    let yk = y.term(k + m)?;
                    let xk = x.term(k).unwrap();
                    Some(hom_space_matrix(xk, yk).map(|h| (k, h)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(HomDegree { components })
        })
        .collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for m in lo + 1..=hi {
        let src = &layout[(m - lo) as usize];
        let tgt = &layout[(m - 1 - lo) as usize];
        let mut delta = FieldMatrix::zeros(f, tgt.dim(), src.dim());
        let sign_term = if m.rem_euclid(2) == 0 { f.neg(1) } else { 1 };
        let mut col = 0;
        for (k, h) in &src.components {
            let (xk, yk) = (x.term(*k).unwrap(), y.term(k + m).unwrap());
            let mut row = 0;
            for (kt, ht) in &tgt.components {
                let xt = x.term(*kt).unwrap();
                let yt = y.term(kt + m - 1).unwrap();
                let mut img: Option<FieldMatrix> = None;
                if *kt == *k {
                    // d^Y_{k+m} f_k
                    if let Some(dy) = y.diff(k + m) {
                        let lift = FieldMatrix::identity(f, xk.dim()).kron(dy.matrix());
                        img = Some(lift.mul(h));
                    }
                } else if *kt == k + 1 {
                    // -(-1)^m f_k d^X_{k+1}
                    if let Some(dx) = x.diff(k + 1) {
                        let lift = dx.matrix().transpose().kron(&FieldMatrix::identity(f, yk.dim()));
                        img = Some(lift.mul(h).scale(sign_term));
                    }
                }
                if let Some(img) = img {
                    debug_assert_eq!(img.rows(), xt.dim() * yt.dim());
                    let coords = ht.solve(&img)?.expect("Hom-differential stays in the hom space");
                    delta.set_block(row, col, &coords);
                }
                row += ht.cols();
            }
            col += h.cols();
        }
        diffs.push(delta);
    }
    let dims = layout.iter().map(HomDegree::dim).collect();
    let complex = VectorComplex::new(f, lo, dims, diffs, (m_lo, m_hi))?;
    Ok(HomComplex { complex, layout })
}

/// `Sigma^s X`: `(Sigma^s X)_n = X_{n-s}` with differentials scaled by `(-1)^s`.
pub fn shift(x: &WindowedComplex, s: i64) -> WindowedComplex {
    let diffs = if s.rem_euclid(2) == 0 {
        x.diffs.clone()
    } else {
        x.diffs.iter().map(|d| d.scale(x.field().neg(1))).collect()
    };
    WindowedComplex {
        lo: x.lo + s,
        hi: x.hi + s,
        terms: x.terms.clone(),
        diffs,
        bounded: x.bounded,
        tags: x.tags.clone(),
    }
}

/// `A (x)_R C` for a right module `A` and a complex of left modules `C`.
pub fn tensor_complex(a: &Module, c: &WindowedComplex) -> Result<VectorComplex> {
    let dims = c
        .terms
        .iter()
        .map(|t| tensor_over_r(a, t).map(|t| t.dim))
        .collect::<Result<Vec<_>>>()?;
    let diffs = c
        .diffs
        .iter()
        .map(|d| tensor_with_morphism(a, d))
        .collect::<Result<Vec<_>>>()?;
    VectorComplex::new(a.field(), c.lo, dims, diffs, c.assertable())
}

/// Brings two bounded complexes to a common window with a zero margin on
/// each side; truncated complexes must already share a window.
pub fn common_window(x: &WindowedComplex, y: &WindowedComplex) -> Result<(WindowedComplex, WindowedComplex)> {
    if x.bounded && y.bounded {
        let lo = x.lo.min(y.lo) - 1;
        let hi = x.hi.max(y.hi) + 1;
        Ok((x.padded(lo, hi)?, y.padded(lo, hi)?))
    } else if x.window() == y.window() {
        Ok((x.clone(), y.clone()))
    } else {
        Err(Error::Precondition("truncated complexes must share a window".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: WindowedComplex,
    target: WindowedComplex,
    /// One component per degree of the (common) window.
    components: Vec<Morphism>,
}

impl ChainMap {
    pub fn new(source: &WindowedComplex, target: &WindowedComplex, components: Vec<Morphism>) -> Result<ChainMap> {
        if source.window() != target.window() || components.len() != source.terms.len() {
            return Err(Error::ComplexInvariant("chain map needs a common window".into()));
        }
        for (i, c) in components.iter().enumerate() {
            Morphism::new(&source.terms[i], &target.terms[i], c.matrix().clone())?;
        }
        for n in source.lo + 1..=source.hi {
            let i = (n - source.lo) as usize;
            let lhs = target.diff(n).unwrap().matrix().mul(components[i].matrix());
            let rhs = components[i - 1].matrix().mul(source.diff(n).unwrap().matrix());
            if lhs != rhs {
                return Err(Error::ComplexInvariant(format!("chain map does not commute with d_{n}")));
            }
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            components,
        })
    }

    pub fn identity(x: &WindowedComplex) -> ChainMap {
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components: x.terms.iter().map(Morphism::identity).collect(),
        }
    }

    pub fn zero(x: &WindowedComplex, y: &WindowedComplex) -> Result<ChainMap> {
        let comps = x.terms.iter().zip(&y.terms).map(|(a, b)| Morphism::zero(a, b)).collect();
        ChainMap::new(x, y, comps)
    }

    pub fn source(&self) -> &WindowedComplex {
        &self.source
    }

    pub fn target(&self) -> &WindowedComplex {
        &self.target
    }

    pub fn components(&self) -> &[Morphism] {
        &self.components
    }

    /// Concatenated `vec` of the components at interior degrees.
    fn raw_interior(&self) -> Vec<u64> {
        self.source
            .interior_degrees()
            .flat_map(|n| self.components[(n - self.source.lo) as usize].matrix().vectorize())
            .collect()
    }
}

/// Basis of all chain maps `X -> Y` over a common window, from the kernel
/// of the commutation constraints `d^Y f_k - f_{k-1} d^X = 0`.
pub fn chain_map_space(x: &WindowedComplex, y: &WindowedComplex) -> Result<Vec<ChainMap>> {
    if x.window() != y.window() {
        return Err(Error::Precondition("chain maps need a common window (see common_window)".into()));
    }
    let f = x.field();
    let homs: Vec<FieldMatrix> = x
        .terms
        .iter()
        .zip(&y.terms)
        .map(|(a, b)| hom_space_matrix(a, b))
        .collect::<Result<_>>()?;
    let offsets: Vec<usize> = homs
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.cols();
            Some(o)
        })
        .collect();
    let unknowns: usize = homs.iter().map(FieldMatrix::cols).sum();
    let mut blocks = Vec::new();
    for n in x.lo + 1..=x.hi {
        let i = (n - x.lo) as usize;
        let (dx, dy) = (x.diff(n).unwrap().matrix(), y.diff(n).unwrap().matrix());
        let (xn, yn1) = (x.terms[i].dim(), y.terms[i - 1].dim());
        let mut eq = FieldMatrix::zeros(f, xn * yn1, unknowns);
        let a = FieldMatrix::identity(f, xn).kron(dy).mul(&homs[i]);
        let b = dx.transpose().kron(&FieldMatrix::identity(f, yn1)).mul(&homs[i - 1]).neg();
        eq.set_block(0, offsets[i], &a);
        eq.set_block(0, offsets[i - 1], &b);
        blocks.push(eq);
    }
    let system = FieldMatrix::vstack_all(f, unknowns, &blocks);
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|c| {
            let coords = kernel.column(c);
            let comps = (0..x.terms.len())
                .map(|i| {
                    let h = &homs[i];
                    let part = FieldMatrix::column_vector(f, &coords[offsets[i]..offsets[i] + h.cols()]);
                    let v = h.mul(&part).column(0);
                    let (xm, ym) = (&x.terms[i], &y.terms[i]);
                    Morphism::new(xm, ym, FieldMatrix::unvectorize(f, ym.dim(), xm.dim(), &v))
                })
                .collect::<Result<Vec<_>>>()?;
            ChainMap::new(x, y, comps)
        })
        .collect()
}

/// Columns are the interior parts of `d s + s d` for a basis of candidate
/// homotopies `s_k: X_k -> Y_{k+1}`.
fn homotopy_image(x: &WindowedComplex, y: &WindowedComplex) -> Result<FieldMatrix> {
    let f = x.field();
    let interior: Vec<i64> = x.interior_degrees().collect();
    let row_offsets: Vec<usize> = interior
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            let i = (n - x.lo) as usize;
            *acc += x.terms[i].dim() * y.terms[i].dim();
            Some(o)
        })
        .collect();
    let rows: usize = interior
        .iter()
        .map(|&n| {
            let i = (n - x.lo) as usize;
            x.terms[i].dim() * y.terms[i].dim()
        })
        .sum();
    let mut cols = Vec::new();
    for k in x.lo..x.hi {
        let i = (k - x.lo) as usize;
        let (xk, yk1) = (&x.terms[i], &y.terms[i + 1]);
        let basis = hom_space_matrix(xk, yk1)?;
        for c in 0..basis.cols() {
            let s = FieldMatrix::unvectorize(f, yk1.dim(), xk.dim(), &basis.column(c));
            let mut col = FieldMatrix::zeros(f, rows, 1);
            // f_k gets d^Y_{k+1} s_k; f_{k+1} gets s_k d^X_{k+1}.
            for (&n, &off) in interior.iter().zip(&row_offsets) {
                let piece = if n == k {
                    y.diff(k + 1).unwrap().matrix().mul(&s)
                } else if n == k + 1 {
                    s.mul(x.diff(k + 1).unwrap().matrix())
                } else {
                    continue;
                };
                let v = FieldMatrix::column_vector(f, &piece.vectorize());
                col.set_block(off, 0, &v);
            }
            cols.push(col);
        }
    }
    Ok(FieldMatrix::hstack_all(f, rows, &cols))
}

/// True iff `f` is chain homotopic to zero on the interior degrees.
pub fn null_homotopic(f: &ChainMap) -> Result<bool> {
    let img = homotopy_image(&f.source, &f.target)?;
    let v = FieldMatrix::column_vector(f.source.field(), &f.raw_interior());
    Ok(img.rows() == 0 || img.solve(&v)?.is_some())
}

/// `dim` of chain maps `X -> Y` modulo null-homotopic ones, on interior degrees.
pub fn chain_maps_mod_homotopy_dim(x: &WindowedComplex, y: &WindowedComplex) -> Result<usize> {
    let maps = chain_map_space(x, y)?;
    let f = x.field();
    let rows = x
        .interior_degrees()
        .map(|n| {
            let i = (n - x.lo) as usize;
            x.terms[i].dim() * y.terms[i].dim()
        })
        .sum();
    let raw: Vec<FieldMatrix> = maps
        .iter()
        .map(|m| FieldMatrix::column_vector(f, &m.raw_interior()))
        .collect();
    let maps_rank = FieldMatrix::hstack_all(f, rows, &raw).rank();
    let htpy_rank = homotopy_image(x, y)?.rank();
    Ok(maps_rank - htpy_rank)
}

/// A degreewise split extension `0 -> Sigma^{-1} Z -> E -> X -> 0`.
///
/// `E_k = Z_{k+1} (+) X_k` with differential `[[-d^Z, tau_k], [0, d^X]]`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub complex: WindowedComplex,
    pub sub_dims: Vec<usize>,
    quotient: WindowedComplex,
}

impl Extension {
    pub fn quotient(&self) -> &WindowedComplex {
        &self.quotient
    }
}

fn assemble_extension_matrix(
    x: &WindowedComplex,
    z: &WindowedComplex,
    k: i64,
    tau_k: &FieldMatrix,
) -> FieldMatrix {
    // d_E,k : Z_{k+1} (+) X_k -> Z_k (+) X_{k-1}
    let f = x.field();
    let zk1 = z.module_at(k + 1).unwrap();
    let zk = z.module_at(k).unwrap();
    let xk = x.module_at(k).unwrap();
    let xk_1 = x.module_at(k - 1).unwrap();
    let mut m = FieldMatrix::zeros(f, zk.dim() + xk_1.dim(), zk1.dim() + xk.dim());
    m.set_block(0, 0, &z.diff_matrix_at(k + 1).unwrap().neg());
    m.set_block(0, zk1.dim(), tau_k);
    m.set_block(zk.dim(), zk1.dim(), &x.diff_matrix_at(k).unwrap());
    m
}

/// Builds the extension classified by a chain map `f: X -> Z`.
pub fn extension_from_chain_map(f: &ChainMap) -> Result<Extension> {
    let (x, z) = (&f.source, &f.target);
    if !(x.bounded && z.bounded) {
        return Err(Error::Precondition("extensions are built for bounded complexes".into()));
    }
    let lo = x.lo;
    let terms: Vec<Module> = (x.lo..=x.hi)
        .map(|k| direct_sum(&[z.module_at(k + 1).unwrap(), x.module_at(k).unwrap()]))
        .collect();
    let sub_dims: Vec<usize> = (x.lo..=x.hi).map(|k| z.module_at(k + 1).unwrap().dim()).collect();
    let diffs: Vec<Morphism> = (x.lo + 1..=x.hi)
        .map(|k| {
            let tau = f.components[(k - lo) as usize].matrix();
            let m = assemble_extension_matrix(x, z, k, tau);
            Morphism::new(&terms[(k - lo) as usize], &terms[(k - lo - 1) as usize], m)
        })
        .collect::<Result<_>>()?;
    let tags = terms
        .iter()
        .zip(&sub_dims)
        .map(|(t, &s)| {
            let mut v = Vec::new();
            if s > 0 {
                v.push(Summand { label: "sub".into(), offset: 0, dim: s });
            }
            if t.dim() > s {
                v.push(Summand { label: "quotient".into(), offset: s, dim: t.dim() - s });
            }
            v
        })
        .collect();
    let complex = WindowedComplex::new(lo, terms, diffs, true)?.with_tags(tags)?;
    Ok(Extension {
        complex,
        sub_dims,
        quotient: x.clone(),
    })
}

/// Checks the block shape of `E`: the first summand is a subcomplex, the
/// projection onto the second is a chain map onto `X`, and each degree is
/// a direct sum of modules.
pub fn is_degreewise_split_extension(e: &Extension) -> bool {
    let c = &e.complex;
    let x = &e.quotient;
    if c.window() != x.window() {
        return false;
    }
    for (i, t) in c.terms.iter().enumerate() {
        let s = e.sub_dims[i];
        if t.dim() != s + x.terms[i].dim() {
            return false;
        }
        for a in t.action() {
            if !a.block(0, s, s, t.dim() - s).is_zero() || !a.block(s, 0, t.dim() - s, s).is_zero() {
                return false;
            }
        }
    }
    for k in c.lo + 1..=c.hi {
        let i = (k - c.lo) as usize;
        let d = c.diff(k).unwrap().matrix();
        let (s_src, s_tgt) = (e.sub_dims[i], e.sub_dims[i - 1]);
        let q_src = c.terms[i].dim() - s_src;
        let q_tgt = c.terms[i - 1].dim() - s_tgt;
        if !d.block(s_tgt, 0, q_tgt, s_src).is_zero() {
            return false;
        }
        if d.block(s_tgt, s_src, q_tgt, q_src) != *x.diff(k).unwrap().matrix() {
            return false;
        }
    }
    true
}

/// Solves for a chain-level section `X -> E` of the projection; the
/// extension splits iff one exists.
pub fn is_split_extension(e: &Extension) -> Result<bool> {
    let c = &e.complex;
    let x = &e.quotient;
    let f = c.field();
    // Unknowns: sigma_k in Hom(X_k, Sub_k) where Sub_k is the first summand of E_k.
    let subs: Vec<Module> = c
        .terms
        .iter()
        .zip(&e.sub_dims)
        .map(|(t, &s)| {
            let span = FieldMatrix::identity(f, t.dim()).select_columns(&(0..s).collect::<Vec<_>>());
            submodule(t, &span).map(|p| p.0)
        })
        .collect::<Result<_>>()?;
    let homs: Vec<FieldMatrix> = x
        .terms
        .iter()
        .zip(&subs)
        .map(|(a, b)| hom_space_matrix(a, b))
        .collect::<Result<_>>()?;
    let offsets: Vec<usize> = homs
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.cols();
            Some(o)
        })
        .collect();
    let unknowns: usize = homs.iter().map(FieldMatrix::cols).sum();
    let mut lhs_blocks = Vec::new();
    let mut rhs_blocks = Vec::new();
    for k in c.lo + 1..=c.hi {
        let i = (k - c.lo) as usize;
        let d = c.diff(k).unwrap().matrix();
        let (s_src, s_tgt) = (e.sub_dims[i], e.sub_dims[i - 1]);
        let xk = x.terms[i].dim();
        let top_left = d.block(0, 0, s_tgt, s_src);
        let top_right = d.block(0, s_src, s_tgt, xk);
        let dx = x.diff(k).unwrap().matrix();
        // top_left sigma_k - sigma_{k-1} d^X_k = -top_right
        let mut eq = FieldMatrix::zeros(f, xk * s_tgt, unknowns);
        eq.set_block(0, offsets[i], &FieldMatrix::identity(f, xk).kron(&top_left).mul(&homs[i]));
        eq.set_block(
            0,
            offsets[i - 1],
            &dx.transpose().kron(&FieldMatrix::identity(f, s_tgt)).mul(&homs[i - 1]).neg(),
        );
        lhs_blocks.push(eq);
        rhs_blocks.push(FieldMatrix::column_vector(f, &top_right.neg().vectorize()));
    }
    let lhs = FieldMatrix::vstack_all(f, unknowns, &lhs_blocks);
    let rhs = FieldMatrix::vstack_all(f, 1, &rhs_blocks);
    Ok(lhs.solve(&rhs)?.is_some())
}

/// Extension-side count for the Hom-complex/extension correspondence.
#[derive(Clone, Debug)]
pub struct ExtensionClasses {
    /// Dimension of all degreewise split extensions `tau` with `d_E^2 = 0`.
    pub cocycle_dim: usize,
    /// Dimension of the split ones.
    pub split_dim: usize,
    /// Chain maps `X -> Z` whose extensions represent independent non-split classes.
    pub representatives: Vec<ChainMap>,
    /// Chain maps whose extensions are split, spanning the split subspace.
    pub split_generators: Vec<ChainMap>,
}

impl ExtensionClasses {
    pub fn class_dim(&self) -> usize {
        self.cocycle_dim - self.split_dim
    }
}

/// Counts degreewise split extensions of `X` by `Sigma^{-1} Z` modulo split
/// ones. Cocycles come from squaring the assembled differential of `E`;
/// split extensions from conjugating the trivial extension by
/// `[[1, s], [0, 1]]`.
pub fn extension_classes(x: &WindowedComplex, z: &WindowedComplex) -> Result<ExtensionClasses> {
    if x.window() != z.window() || !(x.bounded && z.bounded) {
        return Err(Error::Precondition("extension classes need bounded complexes on a common window".into()));
    }
    let f = x.field();
    let degrees: Vec<i64> = (x.lo..=x.hi).collect();
    let mods = |c: &WindowedComplex, k: i64| c.module_at(k).unwrap();
    // tau_k in Hom(X_k, Z_k).
    let homs: Vec<FieldMatrix> = degrees
        .iter()
        .map(|&k| hom_space_matrix(&mods(x, k), &mods(z, k)))
        .collect::<Result<_>>()?;
    let offsets: Vec<usize> = homs
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.cols();
            Some(o)
        })
        .collect();
    let unknowns: usize = homs.iter().map(FieldMatrix::cols).sum();
    let tau_from = |coords: &[u64]| -> Vec<FieldMatrix> {
        degrees
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let h = &homs[i];
                let part = FieldMatrix::column_vector(f, &coords[offsets[i]..offsets[i] + h.cols()]);
                let (xk, zk) = (mods(x, k), mods(z, k));
                FieldMatrix::unvectorize(f, zk.dim(), xk.dim(), &h.mul(&part).column(0))
            })
            .collect()
    };
    let assemble = |tau: &[FieldMatrix]| -> Vec<FieldMatrix> {
        degrees
            .iter()
            .skip(1)
            .map(|&k| assemble_extension_matrix(x, z, k, &tau[(k - x.lo) as usize]))
            .collect()
    };

    // Cocycles: kernel of tau -> off-diagonal blocks of d_E d_E.
    let mut square_cols = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut coords = vec![0; unknowns];
        coords[u] = 1;
        let ds = assemble(&tau_from(&coords));
        let mut v = Vec::new();
        for w in ds.windows(2) {
            let sq = w[0].mul(&w[1]);
            v.extend(sq.vectorize());
        }
        square_cols.push(v);
    }
    let sq_rows = square_cols.first().map_or(0, Vec::len);
    let cocycles = FieldMatrix::from_columns(f, sq_rows, &square_cols).kernel_basis();

    // Split extensions: conjugate d_{E_0} by A_k = [[1, s_k], [0, 1]].
    let trivial = assemble(&tau_from(&vec![0; unknowns]));
    let mut split_cols = Vec::new();
    for (i, &k) in degrees.iter().enumerate() {
        let (xk, zk1) = (mods(x, k), mods(z, k + 1));
        let basis = hom_space_matrix(&xk, &zk1)?;
        for c in 0..basis.cols() {
            let s = FieldMatrix::unvectorize(f, zk1.dim(), xk.dim(), &basis.column(c));
            let auto = |deg: i64| -> FieldMatrix {
                let (xd, zd1) = (mods(x, deg), mods(z, deg + 1));
                let mut a = FieldMatrix::identity(f, zd1.dim() + xd.dim());
                if deg == k {
                    a.set_block(0, zd1.dim(), &s);
                }
                a
            };
            let auto_inv = |deg: i64| -> FieldMatrix {
                let (xd, zd1) = (mods(x, deg), mods(z, deg + 1));
                let mut a = FieldMatrix::identity(f, zd1.dim() + xd.dim());
                if deg == k {
                    a.set_block(0, zd1.dim(), &s.neg());
                }
                a
            };
            let mut coords = vec![0u64; unknowns];
            for (j, &deg) in degrees.iter().enumerate().skip(1) {
                let conj = auto(deg - 1).mul(&trivial[j - 1]).mul(&auto_inv(deg));
                let zd = mods(z, deg).dim();
                let zd1 = mods(z, deg + 1).dim();
                let tau = conj.block(0, zd1, zd, mods(x, deg).dim());
                let sol = homs[j]
                    .solve(&FieldMatrix::column_vector(f, &tau.vectorize()))?
                    .expect("conjugated extension is degreewise a module map");
                coords[offsets[j]..offsets[j] + homs[j].cols()].copy_from_slice(&sol.column(0));
            }
            let _ = i;
            split_cols.push(coords);
        }
    }
    let split = FieldMatrix::from_columns(f, unknowns, &split_cols);
    let split_span = column_span(&split);
    let to_chain_map = |coords: &[u64]| -> Result<ChainMap> {
        let comps = tau_from(coords)
            .into_iter()
            .zip(&degrees)
            .map(|(t, &k)| Morphism::new(&mods(x, k), &mods(z, k), t))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(x, z, comps)
    };
    // Complement of the split span inside the cocycles.
    let mut acc = split_span.clone();
    let mut reps = Vec::new();
    for c in 0..cocycles.cols() {
        let v = FieldMatrix::column_vector(f, &cocycles.column(c));
        if !in_span(&acc, &v) {
            acc = acc.hstack(&v);
            reps.push(to_chain_map(&v.column(0))?);
        }
    }
    let split_generators = (0..split_span.cols())
        .map(|c| to_chain_map(&split_span.column(c)))
        .collect::<Result<_>>()?;
    let split_in_cocycles = intersect_spans(&split_span, &cocycles).cols();
    debug_assert_eq!(split_in_cocycles, split_span.cols());
    Ok(ExtensionClasses {
        cocycle_dim: cocycles.cols(),
        split_dim: split_span.cols(),
        representatives: reps,
        split_generators,
    })
}

/// The three sides of the Hom-complex correspondence at degree `n` for
/// bounded `X`, `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomTriple {
    pub hom_homology: usize,
    pub maps_mod_homotopy: usize,
    pub extension_classes: usize,
}

pub fn hom_triple(x: &WindowedComplex, y: &WindowedComplex, n: i64) -> Result<HomTriple> {
    if !(x.bounded && y.bounded) {
        return Err(Error::Precondition("the correspondence is computed for bounded complexes".into()));
    }
    // Pad so that degree n of the Hom-complex lies inside its window.
    let lo = x.lo.min(y.lo) - n.abs() - 1;
    let hi = x.hi.max(y.hi) + n.abs() + 1;
    let (x, y) = (&x.padded(lo, hi)?, &y.padded(lo, hi)?);
    let hom = hom_complex(x, y)?;
    let hom_homology = hom.complex.homology_dim(n)?;
    let target = shift(y, -n);
    let (xp, tp) = common_window(x, &target)?;
    let maps_mod_homotopy = chain_maps_mod_homotopy_dim(&xp, &tp)?;
    let ext = extension_classes(&xp, &tp)?;
    Ok(HomTriple {
        hom_homology,
        maps_mod_homotopy,
        extension_classes: ext.class_dim(),
    })
}

// ---------------------------------------------------------------------------
// Tag-driven covering algorithms. They operate on block structures of vector
// complexes so that the same code serves a complex of modules and its
// tensor product with a fixed module.

/// Per-degree block layout `(offset, dim)` for each tag.
type Blocks = Vec<Vec<(usize, usize)>>;

fn blocks_of(x: &WindowedComplex) -> Result<Blocks> {
    let tags = x
        .tags
        .as_ref()
        .ok_or_else(|| Error::Precondition("complex has no summand tags".into()))?;
    Ok(tags.iter().map(|t| t.iter().map(|s| (s.offset, s.dim)).collect()).collect())
}

fn coords_of(blocks: &[(usize, usize)], sel: &[usize]) -> Vec<usize> {
    sel.iter().flat_map(|&t| blocks[t].0..blocks[t].0 + blocks[t].1).collect()
}

fn normalize(sel: &mut Selection) {
    for s in sel.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
}

/// Downward closure: every tag hit by the differential of a selected tag is
/// added, from the top degree down.
fn close_down(vc: &VectorComplex, blocks: &Blocks, seed: &Selection) -> Selection {
    let mut sel = seed.clone();
    let lo = vc.lo;
    for n in (vc.lo + 1..=vc.hi).rev() {
        let i = (n - lo) as usize;
        let d = vc.diff(n);
        let cols = coords_of(&blocks[i], &sel[i]);
        let mut add = BTreeSet::new();
        for (t, &(o, dim)) in blocks[i - 1].iter().enumerate() {
            let hit = (o..o + dim).any(|r| cols.iter().any(|&c| d.get(r, c) != 0));
            if hit {
                add.insert(t);
            }
        }
        sel[i - 1].extend(add);
        normalize(&mut sel);
    }
    sel
}

fn restrict(vc: &VectorComplex, blocks: &Blocks, sel: &Selection) -> VectorComplex {
    let lo = vc.lo;
    let coords: Vec<Vec<usize>> = sel.iter().enumerate().map(|(i, s)| coords_of(&blocks[i], s)).collect();
    let dims = coords.iter().map(Vec::len).collect();
    let diffs = (vc.lo + 1..=vc.hi)
        .map(|n| {
            let i = (n - lo) as usize;
            vc.diff(n).select_rows(&coords[i - 1]).select_columns(&coords[i])
        })
        .collect();
    VectorComplex {
        field: vc.field,
        lo,
        hi: vc.hi,
        dims,
        diffs,
        faithful: vc.faithful,
    }
}

fn complement(blocks: &Blocks, sel: &Selection) -> Selection {
    blocks
        .iter()
        .zip(sel)
        .map(|(b, s)| (0..b.len()).filter(|t| !s.contains(t)).collect())
        .collect()
}

/// Grows a closed selection until the restricted complex is exact at every
/// faithful degree. Requires `vc` itself to be exact there.
fn close_exact(vc: &VectorComplex, blocks: &Blocks, seed: &Selection) -> Selection {
    let lo = vc.lo;
    let mut sel = close_down(vc, blocks, seed);
    loop {
        let sub = restrict(vc, blocks, &sel);
        let Some(n) = sub.faithful_degrees().find(|&n| sub.homology_dim(n).unwrap() > 0) else {
            return sel;
        };
        let i = (n - lo) as usize;
        // Cycles of the subcomplex at n, embedded in vc's coordinates.
        let sub_coords = coords_of(&blocks[i], &sel[i]);
        let embed = FieldMatrix::identity(vc.field, vc.dim(n)).select_columns(&sub_coords);
        let z = embed.mul(&sub.cycles(n));
        let d = vc.diff(n + 1);
        let mut b = d.select_columns(&coords_of(&blocks[i + 1], &sel[i + 1]));
        let covered = |b: &FieldMatrix| intersect_spans(&z, b).cols();
        let mut have = covered(&b);
        for t in 0..blocks[i + 1].len() {
            if have == z.cols() {
                break;
            }
            if sel[i + 1].contains(&t) {
                continue;
            }
            let cand = b.hstack(&d.select_columns(&coords_of(&blocks[i + 1], &[t])));
            let now = covered(&cand);
            if now > have {
                sel[i + 1].push(t);
                b = cand;
                have = now;
            }
        }
        assert_eq!(have, z.cols(), "ambient complex is not exact at degree {n}");
        normalize(&mut sel);
        sel = close_down(vc, blocks, &sel);
    }
}

/// A tag-selected subcomplex together with its inclusion.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub selection: Selection,
    pub complex: WindowedComplex,
    pub inclusion: ChainMap,
}

impl Subcomplex {
    pub fn tag_counts(&self) -> Vec<usize> {
        self.selection.iter().map(Vec::len).collect()
    }
}

fn check_seed(x: &WindowedComplex, seed: &Selection) -> Result<()> {
    let blocks = blocks_of(x)?;
    if seed.len() != blocks.len() {
        return Err(Error::Precondition("seed needs one tag list per degree".into()));
    }
    for (s, b) in seed.iter().zip(&blocks) {
        if s.iter().any(|&t| t >= b.len()) {
            return Err(Error::Precondition("seed refers to a nonexistent tag".into()));
        }
    }
    Ok(())
}

/// The tag-selected subcomplex of `X` given by `sel`, with its inclusion.
pub fn select_subcomplex(x: &WindowedComplex, sel: &Selection) -> Result<Subcomplex> {
    let blocks = blocks_of(x)?;
    let tags = x.tags.as_ref().unwrap();
    let f = x.field();
    let mut terms = Vec::new();
    let mut incs = Vec::new();
    let mut new_tags = Vec::new();
    for (i, s) in sel.iter().enumerate() {
        let coords = coords_of(&blocks[i], s);
        let span = FieldMatrix::identity(f, x.terms[i].dim()).select_columns(&coords);
        let action = x.terms[i]
            .action()
            .iter()
            .map(|a| a.select_rows(&coords).select_columns(&coords))
            .collect();
        let m = Module::new_unchecked(x.algebra(), x.side(), coords.len(), action);
        incs.push(Morphism::new(&m, &x.terms[i], span)?);
        terms.push(m);
        let mut off = 0;
        new_tags.push(
            s.iter()
                .map(|&t| {
                    let s = Summand {
                        label: tags[i][t].label.clone(),
                        offset: off,
                        dim: tags[i][t].dim,
                    };
                    off += s.dim;
                    s
                })
                .collect::<Vec<_>>(),
        );
    }
    let diffs = (1..terms.len())
        .map(|i| {
            let d = x.diffs[i - 1].matrix();
            let full = d.mul(incs[i].matrix());
            let m = incs[i - 1]
                .matrix()
                .solve(&full)?
                .ok_or_else(|| Error::Precondition("selection is not closed under the differential".into()))?;
            Morphism::new(&terms[i], &terms[i - 1], m)
        })
        .collect::<Result<Vec<_>>>()?;
    let complex = WindowedComplex::new(x.lo, terms, diffs, x.bounded)?.with_tags(new_tags)?;
    let inclusion = ChainMap::new(&complex, x, incs)?;
    Ok(Subcomplex {
        selection: sel.clone(),
        complex,
        inclusion,
    })
}

/// The quotient of `X` by a closed tag selection, identified with the
/// complementary summands.
pub fn select_quotient(x: &WindowedComplex, sel: &Selection) -> Result<WindowedComplex> {
    let blocks = blocks_of(x)?;
    let comp = complement(&blocks, sel);
    let tags = x.tags.as_ref().unwrap();
    let mut terms = Vec::new();
    let mut coords_all = Vec::new();
    let mut new_tags = Vec::new();
    for (i, s) in comp.iter().enumerate() {
        let coords = coords_of(&blocks[i], s);
        let action = x.terms[i]
            .action()
            .iter()
            .map(|a| a.select_rows(&coords).select_columns(&coords))
            .collect();
        terms.push(Module::new_unchecked(x.algebra(), x.side(), coords.len(), action));
        let mut off = 0;
        new_tags.push(
            s.iter()
                .map(|&t| {
                    let s = Summand {
                        label: tags[i][t].label.clone(),
                        offset: off,
                        dim: tags[i][t].dim,
                    };
                    off += s.dim;
                    s
                })
                .collect::<Vec<_>>(),
        );
        coords_all.push(coords);
    }
    let diffs = (1..terms.len())
        .map(|i| {
            let m = x.diffs[i - 1]
                .matrix()
                .select_rows(&coords_all[i - 1])
                .select_columns(&coords_all[i]);
            Morphism::new(&terms[i], &terms[i - 1], m)
        })
        .collect::<Result<Vec<_>>>()?;
    WindowedComplex::new(x.lo, terms, diffs, x.bounded)?.with_tags(new_tags)
}

/// Smallest tag-selected subcomplex containing the seed: closes the seed
/// downward under the differential.
pub fn covering_subcomplex(x: &WindowedComplex, seed: &Selection) -> Result<Subcomplex> {
    check_seed(x, seed)?;
    if seed.iter().all(Vec::is_empty) {
        return Err(Error::Precondition("seed is empty in every degree".into()));
    }
    let blocks = blocks_of(x)?;
    let mut s = seed.clone();
    normalize(&mut s);
    let sel = close_down(&x.underlying(), &blocks, &s);
    select_subcomplex(x, &sel)
}

/// Tag-selected interior-exact subcomplex containing the seed, built by
/// alternating downward closure with exactness repairs: where homology
/// survives at degree `n`, tags of degree `n + 1` are added greedily in
/// index order until their images cover the cycles.
pub fn exact_covering_subcomplex(x: &WindowedComplex, seed: &Selection) -> Result<Subcomplex> {
    check_seed(x, seed)?;
    let vc = x.underlying();
    if !vc.is_exact() {
        return Err(Error::Precondition("complex is not interior-exact".into()));
    }
    let blocks = blocks_of(x)?;
    let mut s = seed.clone();
    normalize(&mut s);
    let sel = close_exact(&vc, &blocks, &s);
    select_subcomplex(x, &sel)
}

/// `A (x) C` computed summand by summand, so that its blocks line up with
/// the tags of `C`.
fn tensor_blocks(a: &Module, c: &WindowedComplex) -> Result<(VectorComplex, Blocks)> {
    let blocks = blocks_of(c)?;
    let f = c.field();
    let mut dims = Vec::new();
    let mut tblocks = Vec::new();
    let mut summands: Vec<Vec<Module>> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let mut off = 0;
        let mut tb = Vec::new();
        let mut mods = Vec::new();
        for &(o, d) in b {
            let coords: Vec<usize> = (o..o + d).collect();
            let action = c.terms[i]
                .action()
                .iter()
                .map(|m| m.select_rows(&coords).select_columns(&coords))
                .collect();
            let m = Module::new_unchecked(c.algebra(), c.side(), d, action);
            let td = tensor_over_r(a, &m)?.dim;
            tb.push((off, td));
            off += td;
            mods.push(m);
        }
        dims.push(off);
        tblocks.push(tb);
        summands.push(mods);
    }
    let mut diffs = Vec::new();
    for i in 1..blocks.len() {
        let d = c.diffs[i - 1].matrix();
        let mut m = FieldMatrix::zeros(f, dims[i - 1], dims[i]);
        for (s, &(so, sd)) in blocks[i].iter().enumerate() {
            for (t, &(to, td)) in blocks[i - 1].iter().enumerate() {
                let piece = d.block(to, so, td, sd);
                if piece.is_zero() {
                    continue;
                }
                let mor = Morphism::new_unchecked(&summands[i][s], &summands[i - 1][t], piece);
                let tm = tensor_with_morphism(a, &mor)?;
                m.set_block(tblocks[i - 1][t].0, tblocks[i][s].0, &tm);
            }
        }
        diffs.push(m);
    }
    // Tags whose tensor vanishes would be empty blocks; keep them as zero-width.
    let vc = VectorComplex::new(f, c.lo, dims, diffs, c.assertable())?;
    Ok((vc, tblocks))
}

/// Nested tag-selected subcomplexes `Q_0 < Q_1 < .. < Q_last = P` such that
/// `A (x) Q_i` and `A (x) (Q_{i+1} / Q_i)` are interior-exact.
///
/// Each layer is found by alternating the downward closure in `P` with the
/// exact closure in `A (x) P`, restricted to the part of `P` not yet used,
/// until both agree.
pub fn filtration_by_small(p: &WindowedComplex, a: &Module) -> Result<Vec<Subcomplex>> {
    for t in &p.terms {
        if !crate::modrep::is_projective(t) {
            return Err(Error::Precondition("filtration needs a complex of projectives".into()));
        }
    }
    let blocks = blocks_of(p)?;
    let (ta, tblocks) = tensor_blocks(a, p)?;
    if !ta.is_exact() {
        return Err(Error::Precondition("A (x) P is not interior-exact".into()));
    }
    let pv = p.underlying();
    let mut used: Selection = blocks.iter().map(|_| Vec::new()).collect();
    let mut layers = Vec::new();
    loop {
        let rest = complement(&blocks, &used);
        if rest.iter().all(Vec::is_empty) {
            break;
        }
        // Work inside the quotient P / used, identified with the remaining tags.
        let sub_blocks = |b: &Blocks| -> Blocks {
            rest.iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut off = 0;
                    r.iter()
                        .map(|&t| {
                            let o = off;
                            off += b[i][t].1;
                            (o, b[i][t].1)
                        })
                        .collect()
                })
                .collect()
        };
        let qp = restrict(&pv, &blocks, &rest);
        let qa = restrict(&ta, &tblocks, &rest);
        let (qb, qtb) = (sub_blocks(&blocks), sub_blocks(&tblocks));
        // Seed: first remaining tag in the highest degree that has one.
        let top = rest.iter().rposition(|r| !r.is_empty()).unwrap();
        let mut local: Selection = rest.iter().map(|_| Vec::new()).collect();
        local[top].push(0);
        loop {
            local = close_down(&qp, &qb, &local);
            let widened = close_exact(&qa, &qtb, &local);
            if widened != local {
                local = widened;
                continue;
            }
            // The complementary quotient can still fail at the bottom edge of
            // the window; absorb the offending tags and go round again.
            let compl = complement(&qtb, &local);
            let quot = restrict(&qa, &qtb, &compl);
            match quot.first_failure("quotient") {
                None => break,
                Some(w) => {
                    let i = (w.degree - qa.lo) as usize;
                    let mut off = 0;
                    for &t in &compl[i] {
                        let d = qtb[i][t].1;
                        if w.vector[off..off + d].iter().any(|&c| c != 0) {
                            local[i].push(t);
                        }
                        off += d;
                    }
                    normalize(&mut local);
                }
            }
        }
        for (i, l) in local.iter().enumerate() {
            used[i].extend(l.iter().map(|&j| rest[i][j]));
        }
        normalize(&mut used);
        layers.push(select_subcomplex(p, &used)?);
    }
    Ok(layers)
}

/// Re-checks a filtration without reusing the blockwise computation: each
/// layer and each successive quotient has interior-exact `A (x) -`
/// computed on whole terms, layers nest, and the new tags of all layers add
/// up to the tags of `P`.
pub fn verify_filtration(p: &WindowedComplex, a: &Module, layers: &[Subcomplex]) -> Result<()> {
    let fail = |msg: String| Err(Error::ComplexInvariant(msg));
    let counts = p
        .tag_counts()
        .ok_or_else(|| Error::Precondition("complex has no summand tags".into()))?;
    let mut prev: Selection = counts.iter().map(|_| Vec::new()).collect();
    let mut totals = vec![0; counts.len()];
    for (i, layer) in layers.iter().enumerate() {
        let q = select_subcomplex(p, &layer.selection)?;
        if !tensor_complex(a, &q.complex)?.is_exact() {
            return fail(format!("layer {i} is not A-exact"));
        }
        if prev.iter().zip(&layer.selection).any(|(old, new)| old.iter().any(|t| !new.contains(t))) {
            return fail(format!("layer {i} does not contain the previous layer"));
        }
        // Q_i / Q_{i-1}, as the image of Q_i in P / Q_{i-1}.
        let quot = select_quotient(p, &prev)?;
        let rel: Selection = layer
            .selection
            .iter()
            .zip(&prev)
            .enumerate()
            .map(|(d, (s, old))| {
                let remaining: Vec<usize> = (0..counts[d]).filter(|t| !old.contains(t)).collect();
                s.iter()
                    .filter(|t| !old.contains(t))
                    .map(|t| remaining.iter().position(|r| r == t).unwrap())
                    .collect()
            })
            .collect();
        let piece = select_subcomplex(&quot, &rel)?;
        if !tensor_complex(a, &piece.complex)?.is_exact() {
            return fail(format!("quotient {i} is not A-exact"));
        }
        for (d, r) in rel.iter().enumerate() {
            totals[d] += r.len();
        }
        prev = layer.selection.clone();
    }
    if totals != counts {
        return fail(format!("layer ranks {totals:?} do not add up to {counts:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mk_cyclic_group_algebra, mk_local_sq_zero};

    fn r2() -> Arc<Algebra> {
        mk_local_sq_zero(2, 2).unwrap()
    }

    #[test]
    fn sphere_and_disk_homology() {
        let a = r2();
        let k = Module::trivial(&a, Side::Left);
        let r = Module::regular(&a, Side::Left);
        let j = Module::injective_j(&a, Side::Left);
        let s = WindowedComplex::sphere(0, &k);
        assert_eq!(homology_at(&s, 0).unwrap().0, 1);
        assert_eq!(homology_at(&s, 1).unwrap().0, 0);
        let d = WindowedComplex::disk(0, &r);
        for n in d.interior_degrees() {
            assert_eq!(homology_at(&d, n).unwrap().0, 0);
        }
        let s2 = WindowedComplex::sphere(2, &j);
        let (dim, h) = homology_at(&s2, 2).unwrap();
        assert_eq!(dim, 3);
        assert_eq!(h, j);
    }

    #[test]
    fn homology_rejects_boundary_degrees_of_truncations() {
        let a = r2();
        let r = Module::regular(&a, Side::Left);
        let c = WindowedComplex::new(0, vec![r.clone(), r.clone()], vec![Morphism::zero(&r, &r)], false).unwrap();
        assert!(matches!(homology_at(&c, 0), Err(Error::NotInterior { .. })));
    }

    #[test]
    fn d_squared_checked() {
        let a = mk_cyclic_group_algebra(2, 2).unwrap();
        let r = Module::regular(&a, Side::Left);
        let id = Morphism::identity(&r);
        let err = WindowedComplex::new(0, vec![r.clone(), r.clone(), r.clone()], vec![id.clone(), id], false);
        assert!(matches!(err, Err(Error::ComplexInvariant(_))));
    }

    #[test]
    fn shift_reindexes() {
        let a = r2();
        let k = Module::trivial(&a, Side::Left);
        let x = WindowedComplex::disk(1, &k);
        assert_eq!(shift(&x, 0), x);
        assert_eq!(shift(&shift(&x, 1), -1), x);
        let s = WindowedComplex::sphere(0, &k);
        assert_eq!(homology_at(&shift(&s, 1), 1).unwrap().0, homology_at(&s, 0).unwrap().0);
    }

    #[test]
    fn hom_complex_yoneda() {
        let a = r2();
        let r = Module::regular(&a, Side::Left);
        let k = Module::trivial(&a, Side::Left);
        let y = WindowedComplex::disk(1, &k);
        let h = hom_complex(&WindowedComplex::sphere(0, &r), &y).unwrap();
        for m in y.lo()..=y.hi() {
            assert_eq!(h.complex.dim(m), y.module_at(m).unwrap().dim());
        }
    }

    #[test]
    fn null_homotopy_examples() {
        let a = r2();
        let r = Module::regular(&a, Side::Left);
        let k = Module::trivial(&a, Side::Left);
        let d = WindowedComplex::disk(0, &r);
        assert!(null_homotopic(&ChainMap::identity(&d)).unwrap());
        let s = WindowedComplex::sphere(0, &k);
        assert!(!null_homotopic(&ChainMap::identity(&s)).unwrap());
    }

    #[test]
    fn non_split_extension_of_spheres() {
        let a = mk_cyclic_group_algebra(2, 2).unwrap();
        let k = Module::trivial(&a, Side::Left);
        let x = WindowedComplex::sphere(0, &k);
        let y = WindowedComplex::sphere(-1, &k);
        // Z = Sigma Y = S^0(k); the identity X -> Z classifies 0 -> Y -> E -> X -> 0.
        let z = shift(&y, 1);
        let (xp, zp) = common_window(&x, &z).unwrap();
        let comps = xp
            .terms()
            .iter()
            .zip(zp.terms())
            .map(|(s, t)| {
                if s.dim() == 1 {
                    Morphism::identity(s)
                } else {
                    Morphism::zero(s, t)
                }
            })
            .collect();
        let f = ChainMap::new(&xp, &zp, comps).unwrap();
        let e = extension_from_chain_map(&f).unwrap();
        assert!(is_degreewise_split_extension(&e));
        assert!(!is_split_extension(&e).unwrap());
        assert!(e.complex.underlying().is_exact());
        let zero = ChainMap::zero(&xp, &zp).unwrap();
        let e0 = extension_from_chain_map(&zero).unwrap();
        assert!(is_split_extension(&e0).unwrap());
    }
}
