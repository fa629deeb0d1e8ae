//! Modules over catalog algebras, module homomorphisms, and the
//! abelian-category toolkit built on them: kernels, cokernels, duals,
//! tensor products, radicals and socles, projective covers and injective
//! hulls.
//!
//! A module stores one action matrix per algebra generator; matrices act on
//! column vectors. For a right module the matrix of `m -> m * a` is used, so
//! the induced map from the algebra is an anti-homomorphism. The action of
//! an arbitrary basis element is derived on demand and cached.
//!
//! The k-linear dual stands in for the character module: over a
//! finite-dimensional algebra it is exact, involutive, and swaps left and
//! right, which is all the duality statements need.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, RingSpec};
use crate::error::{Error, Result};
use crate::exactla::{column_span, complement_coordinates, in_span, FieldMatrix, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A finite-dimensional left or right module over an [`Algebra`].
pub struct Module {
    algebra: Arc<Algebra>,
    side: Side,
    dim: usize,
    action: Vec<FieldMatrix>,
    full_action: OnceLock<Vec<FieldMatrix>>,
}

impl Clone for Module {
    fn clone(&self) -> Self {
        Module {
            algebra: Arc::clone(&self.algebra),
            side: self.side,
            dim: self.dim,
            action: self.action.clone(),
            full_action: self.full_action.clone(),
        }
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.side == other.side
            && self.dim == other.dim
            && self.action == other.action
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({} {}, dim {})", self.algebra.spec(), self.side, self.dim)
    }
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Module {
    /// Builds a module from generator actions and verifies that they extend
    /// to an action of the whole algebra.
    pub fn new(algebra: &Arc<Algebra>, side: Side, dim: usize, action: Vec<FieldMatrix>) -> Result<Module> {
        let m = Module::new_unchecked(algebra, side, dim, action);
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, side: Side, dim: usize, action: Vec<FieldMatrix>) -> Module {
        Module {
            algebra: Arc::clone(algebra),
            side,
            dim,
            action,
            full_action: OnceLock::new(),
        }
    }

    pub fn zero(algebra: &Arc<Algebra>, side: Side) -> Module {
        let f = algebra.field();
        let action = algebra.generators().iter().map(|_| FieldMatrix::zeros(f, 0, 0)).collect();
        Module::new_unchecked(algebra, side, 0, action)
    }

    /// The simple module `k = A / rad A`.
    pub fn trivial(algebra: &Arc<Algebra>, side: Side) -> Module {
        let f = algebra.field();
        let d = algebra.dim();
        let unit = FieldMatrix::column_vector(f, &algebra.basis_vector(algebra.unit_index()));
        let span = unit.hstack(algebra.radical_basis());
        let action = algebra
            .generators()
            .iter()
            .map(|&g| {
                let e = FieldMatrix::column_vector(f, &algebra.basis_vector(g));
                let coeff = span.solve(&e).expect("shape").expect("catalog algebras are local");
                FieldMatrix::from_rows(f, &[[coeff.get(0, 0) as i64]])
            })
            .collect();
        let _ = d;
        Module::new_unchecked(algebra, side, 1, action)
    }

    /// The regular module `A` acting on itself.
    pub fn regular(algebra: &Arc<Algebra>, side: Side) -> Module {
        let action = algebra
            .generators()
            .iter()
            .map(|&g| {
                let e = algebra.basis_vector(g);
                match side {
                    Side::Left => algebra.left_mult_matrix(&e),
                    Side::Right => algebra.right_mult_matrix(&e),
                }
            })
            .collect();
        Module::new_unchecked(algebra, side, algebra.dim(), action)
    }

    /// The free module `A^t`, copies laid out consecutively.
    pub fn free(algebra: &Arc<Algebra>, side: Side, t: usize) -> Module {
        direct_sum(&vec![Module::regular(algebra, side); t])
    }

    /// The indecomposable injective `J = dual(A)`, with its basis listed in
    /// reverse so that the socle comes last.
    pub fn injective_j(algebra: &Arc<Algebra>, side: Side) -> Module {
        let d = dual(&Module::regular(algebra, side.opposite()));
        let n = d.dim;
        let f = algebra.field();
        let mut rev = FieldMatrix::zeros(f, n, n);
        for i in 0..n {
            rev.set(i, n - 1 - i, 1);
        }
        d.change_basis(&rev, &rev)
    }

    /// The radical `rad A` as a submodule of the regular module.
    pub fn radical_ideal(algebra: &Arc<Algebra>, side: Side) -> Module {
        let r = Module::regular(algebra, side);
        submodule(&r, algebra.radical_basis()).expect("radical is an ideal").0
    }

    /// Looks up one of the builtin names `k`, `R`, `J`, `m`.
    pub fn builtin(algebra: &Arc<Algebra>, side: Side, name: &str) -> Result<Module> {
        match name {
            "k" => Ok(Module::trivial(algebra, side)),
            "R" => Ok(Module::regular(algebra, side)),
            "J" => Ok(Module::injective_j(algebra, side)),
            "m" => Ok(Module::radical_ideal(algebra, side)),
            _ => Err(Error::Parse(format!("unknown builtin module `{name}` (expected k, R, J or m)"))),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Action matrices of the algebra generators, in generator order.
    pub fn action(&self) -> &[FieldMatrix] {
        &self.action
    }

    /// Action matrix of every algebra basis element.
    pub fn full_action(&self) -> &[FieldMatrix] {
        self.full_action.get_or_init(|| self.compute_full_action())
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, element: &[u64]) -> FieldMatrix {
        let f = self.field();
        let mut m = FieldMatrix::zeros(f, self.dim, self.dim);
        for (b, &c) in element.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.full_action()[b].scale(c));
            }
        }
        m
    }

    fn word_action(&self, word: &[usize]) -> FieldMatrix {
        let f = self.field();
        let mut m = FieldMatrix::identity(f, self.dim);
        for &g in word {
            m = match self.side {
                Side::Left => m.mul(&self.action[g]),
                Side::Right => self.action[g].mul(&m),
            };
        }
        m
    }

    fn compute_full_action(&self) -> Vec<FieldMatrix> {
        let f = self.field();
        self.algebra
            .basis_words()
            .iter()
            .map(|terms| {
                terms.iter().fold(FieldMatrix::zeros(f, self.dim, self.dim), |acc, (c, w)| {
                    acc.add(&self.word_action(w).scale(*c))
                })
            })
            .collect()
    }

    fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        if self.action.len() != a.generators().len() {
            return Err(Error::ModuleInvariant(format!(
                "expected {} generator actions, got {}",
                a.generators().len(),
                self.action.len()
            )));
        }
        for m in &self.action {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != f {
                return Err(Error::ModuleInvariant("action matrix has wrong shape or field".into()));
            }
        }
        let full = self.full_action();
        if full[a.unit_index()] != FieldMatrix::identity(f, self.dim) {
            return Err(Error::ModuleInvariant("unit does not act as identity".into()));
        }
        for (gi, &g) in a.generators().iter().enumerate() {
            if full[g] != self.action[gi] {
                return Err(Error::ModuleInvariant(format!(
                    "generator {} is inconsistent with the algebra relations",
                    a.generator_labels()[gi]
                )));
            }
        }
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = match self.side {
                    Side::Left => full[i].mul(&full[j]),
                    Side::Right => full[j].mul(&full[i]),
                };
                let mut rhs = FieldMatrix::zeros(f, self.dim, self.dim);
                for k in 0..d {
                    let c = a.structure_constant(i, j, k);
                    if c != 0 {
                        rhs = rhs.add(&full[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(Error::ModuleInvariant(format!(
                        "action violates the relation for {} * {}",
                        a.basis_labels()[i],
                        a.basis_labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Rewrites the module in a new basis; `t` has the new basis vectors as
    /// columns and `t_inv` is its inverse.
    pub fn change_basis(&self, t: &FieldMatrix, t_inv: &FieldMatrix) -> Module {
        let action = self.action.iter().map(|a| t_inv.mul(a).mul(t)).collect();
        Module::new_unchecked(&self.algebra, self.side, self.dim, action)
    }

    pub fn check_compatible(&self, other: &Module) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) || self.side != other.side {
            return Err(Error::Incompatible(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }

    pub fn to_file(&self) -> ModuleFile {
        let labels = self.algebra.generator_labels();
        ModuleFile {
            ring: self.algebra.spec(),
            side: self.side,
            dim: self.dim,
            action: labels
                .iter()
                .zip(&self.action)
                .map(|(l, m)| (l.clone(), m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()))
                .collect(),
        }
    }

    pub fn from_file(file: &ModuleFile) -> Result<Module> {
        let algebra = file.ring.build()?;
        Module::from_file_over(&algebra, file)
    }

    /// Loads a module file over an already-built algebra, which must match
    /// the file's ring.
    pub fn from_file_over(algebra: &Arc<Algebra>, file: &ModuleFile) -> Result<Module> {
        if algebra.spec() != file.ring {
            return Err(Error::Incompatible(format!("module file is over {}, expected {}", file.ring, algebra.spec())));
        }
        let f = algebra.field();
        let labels = algebra.generator_labels();
        if let Some(extra) = file.action.keys().find(|k| !labels.contains(k)) {
            return Err(Error::ModuleInvariant(format!("unknown generator `{extra}`")));
        }
        let mut action = Vec::new();
        for l in labels {
            let rows = file
                .action
                .get(l)
                .ok_or_else(|| Error::ModuleInvariant(format!("missing action for generator `{l}`")))?;
            if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
                return Err(Error::ModuleInvariant(format!("action of `{l}` is not {0}x{0}", file.dim)));
            }
            action.push(FieldMatrix::from_rows_with_cols(f, rows, file.dim));
        }
        Module::new(algebra, file.side, file.dim, action)
    }
}

/// On-disk JSON form of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: RingSpec,
    pub side: Side,
    pub dim: usize,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

/// A module homomorphism; `matrix` is `target.dim x source.dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    matrix: FieldMatrix,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}) {:?}", self.source.dim, self.target.dim, self.matrix)
    }
}

impl Morphism {
    pub fn new(source: &Module, target: &Module, matrix: FieldMatrix) -> Result<Morphism> {
        source.check_compatible(target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        for (gi, (a, b)) in source.action.iter().zip(&target.action).enumerate() {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::NotAMorphism(format!(
                    "does not commute with generator {}",
                    source.algebra.generator_labels()[gi]
                )));
            }
        }
        Ok(Morphism::new_unchecked(source, target, matrix))
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, matrix: FieldMatrix) -> Morphism {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim, source.dim));
        Morphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism::new_unchecked(m, m, FieldMatrix::identity(m.field(), m.dim))
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism::new_unchecked(source, target, FieldMatrix::zeros(source.field(), target.dim, source.dim))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target != self.source {
            return Err(Error::Incompatible("composition of non-composable morphisms".into()));
        }
        Ok(Morphism::new_unchecked(&first.source, &self.target, self.matrix.mul(&first.matrix)))
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism::new_unchecked(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism::new_unchecked(&self.source, &self.target, self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: u64) -> Morphism {
        Morphism::new_unchecked(&self.source, &self.target, self.matrix.scale(c))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Map out of the free module `A^t` determined by the images of the
/// generators `1_1, .., 1_t`.
pub fn free_map(target: &Module, images: &[Vec<u64>]) -> Morphism {
    let a = target.algebra();
    let free = Module::free(a, target.side, images.len());
    let full = target.full_action();
    let mut cols = Vec::with_capacity(free.dim);
    for v in images {
        for rho in full {
            cols.push(rho.mul_vec(v));
        }
    }
    let m = FieldMatrix::from_columns(target.field(), target.dim, &cols);
    Morphism::new_unchecked(&free, target, m)
}

/// Columns are `vec` (column-major) of a basis of `Hom_A(M, N)`.
pub fn hom_space_matrix(m: &Module, n: &Module) -> Result<FieldMatrix> {
    m.check_compatible(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(FieldMatrix::zeros(f, dm * dn, 0));
    }
    let im = FieldMatrix::identity(f, dm);
    let in_ = FieldMatrix::identity(f, dn);
    let blocks: Vec<FieldMatrix> = m
        .action
        .iter()
        .zip(&n.action)
        .map(|(am, an)| am.transpose().kron(&in_).sub(&im.kron(an)))
        .collect();
    let system = FieldMatrix::vstack_all(f, dm * dn, &blocks);
    Ok(system.kernel_basis())
}

/// Basis of `Hom_A(M, N)`, found as the kernel of the intertwining system.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    let h = hom_space_matrix(m, n)?;
    let f = m.field();
    Ok((0..h.cols())
        .map(|c| Morphism::new_unchecked(m, n, FieldMatrix::unvectorize(f, n.dim, m.dim, &h.column(c))))
        .collect())
}

/// Submodule spanned by the columns of `span`, with its inclusion. The basis
/// is the canonical echelon basis of the span.
pub fn submodule(m: &Module, span: &FieldMatrix) -> Result<(Module, Morphism)> {
    let basis = column_span(span);
    let mut action = Vec::with_capacity(m.action.len());
    for a in &m.action {
        let moved = a.mul(&basis);
        let coeff = basis
            .solve(&moved)?
            .ok_or_else(|| Error::ModuleInvariant("span is not closed under the action".into()))?;
        action.push(coeff);
    }
    let sub = Module::new_unchecked(&m.algebra, m.side, basis.cols(), action);
    let inc = Morphism::new_unchecked(&sub, m, basis);
    Ok((sub, inc))
}

/// Quotient of `m` by the submodule spanned by `span`, with the projection.
/// The quotient basis is the image of the standard basis vectors outside
/// the pivot coordinates of the span.
pub fn quotient(m: &Module, span: &FieldMatrix) -> Result<(Module, Morphism)> {
    let f = m.field();
    let basis = column_span(span);
    let comp = complement_coordinates(&basis);
    let lift = FieldMatrix::identity(f, m.dim).select_columns(&comp);
    let change = basis.hstack(&lift);
    let inv = change.inverse().expect("span plus complement is a basis");
    let proj = inv.block(basis.cols(), 0, comp.len(), m.dim);
    let mut action = Vec::with_capacity(m.action.len());
    for a in &m.action {
        if !in_span(&basis, &a.mul(&basis)) {
            return Err(Error::ModuleInvariant("span is not closed under the action".into()));
        }
        action.push(proj.mul(a).mul(&lift));
    }
    let q = Module::new_unchecked(&m.algebra, m.side, comp.len(), action);
    let pi = Morphism::new_unchecked(m, &q, proj);
    Ok((q, pi))
}

pub fn kernel(f: &Morphism) -> (Module, Morphism) {
    submodule(&f.source, &f.matrix.kernel_basis()).expect("kernels are submodules")
}

pub fn image(f: &Morphism) -> (Module, Morphism) {
    submodule(&f.target, &f.matrix).expect("images are submodules")
}

pub fn cokernel(f: &Morphism) -> (Module, Morphism) {
    quotient(&f.target, &f.matrix).expect("images are submodules")
}

/// Direct sum with summands laid out consecutively.
pub fn direct_sum(modules: &[Module]) -> Module {
    let first = modules.first().expect("direct sum of at least one module");
    let f = first.field();
    let dim = modules.iter().map(|m| m.dim).sum();
    let action = (0..first.action.len())
        .map(|g| {
            let blocks: Vec<FieldMatrix> = modules.iter().map(|m| m.action[g].clone()).collect();
            FieldMatrix::block_diag(f, &blocks)
        })
        .collect();
    Module::new_unchecked(&first.algebra, first.side, dim, action)
}

/// Direct sum of morphisms, block diagonal.
pub fn direct_sum_morphism(maps: &[Morphism]) -> Morphism {
    let src: Vec<Module> = maps.iter().map(|m| m.source.clone()).collect();
    let tgt: Vec<Module> = maps.iter().map(|m| m.target.clone()).collect();
    let f = maps[0].source.field();
    let blocks: Vec<FieldMatrix> = maps.iter().map(|m| m.matrix.clone()).collect();
    Morphism::new_unchecked(&direct_sum(&src), &direct_sum(&tgt), FieldMatrix::block_diag(f, &blocks))
}

/// The k-linear dual: same dimension, opposite side, transposed actions.
pub fn dual(m: &Module) -> Module {
    let action = m.action.iter().map(FieldMatrix::transpose).collect();
    Module::new_unchecked(&m.algebra, m.side.opposite(), m.dim, action)
}

/// Dual of a morphism `f: M -> N` is `f^T: dual(N) -> dual(M)`.
pub fn dual_morphism(f: &Morphism) -> Morphism {
    Morphism::new_unchecked(&dual(&f.target), &dual(&f.source), f.matrix.transpose())
}

/// `M (x)_A N` presented as a quotient of `M (x)_k N`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub dim: usize,
    /// `dim x (dim M * dim N)`, kills the balancing relations.
    pub projection: FieldMatrix,
    /// `(dim M * dim N) x dim`, a right inverse of `projection`.
    pub section: FieldMatrix,
}

pub fn tensor_over_r(m: &Module, n: &Module) -> Result<TensorProduct> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::Incompatible("tensor factors over different algebras".into()));
    }
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Incompatible("tensor product needs a right module and a left module".into()));
    }
    let f = m.field();
    let total = m.dim * n.dim;
    let im = FieldMatrix::identity(f, m.dim);
    let in_ = FieldMatrix::identity(f, n.dim);
    let relations: Vec<FieldMatrix> = m
        .action
        .iter()
        .zip(&n.action)
        .map(|(am, an)| am.kron(&in_).sub(&im.kron(an)))
        .collect();
    let rel = FieldMatrix::hstack_all(f, total, &relations);
    let basis = column_span(&rel);
    let comp = complement_coordinates(&basis);
    let section = FieldMatrix::identity(f, total).select_columns(&comp);
    let inv = basis.hstack(&section).inverse().expect("complement completes a basis");
    let projection = inv.block(basis.cols(), 0, comp.len(), total);
    Ok(TensorProduct {
        dim: comp.len(),
        projection,
        section,
    })
}

/// Matrix of `M (x) f: M (x) N -> M (x) N'` in the presentations returned by
/// [`tensor_over_r`].
pub fn tensor_with_morphism(m: &Module, f: &Morphism) -> Result<FieldMatrix> {
    let src = tensor_over_r(m, &f.source)?;
    let tgt = tensor_over_r(m, &f.target)?;
    let id = FieldMatrix::identity(m.field(), m.dim);
    Ok(tgt.projection.mul(&id.kron(&f.matrix)).mul(&src.section))
}

/// Matrix of `g (x) N: M (x) N -> M' (x) N`.
pub fn morphism_with_tensor(g: &Morphism, n: &Module) -> Result<FieldMatrix> {
    let src = tensor_over_r(&g.source, n)?;
    let tgt = tensor_over_r(&g.target, n)?;
    let id = FieldMatrix::identity(n.field(), n.dim);
    Ok(tgt.projection.mul(&g.matrix.kron(&id)).mul(&src.section))
}

/// Columns span `rad(A) * M`.
pub fn radical_span(m: &Module) -> FieldMatrix {
    let rad = m.algebra.radical_basis();
    let f = m.field();
    let parts: Vec<FieldMatrix> = (0..rad.cols()).map(|c| m.action_of(&rad.column(c))).collect();
    column_span(&FieldMatrix::hstack_all(f, m.dim, &parts))
}

/// Columns span `{v : rad(A) v = 0}`.
pub fn socle_span(m: &Module) -> FieldMatrix {
    let rad = m.algebra.radical_basis();
    let f = m.field();
    let parts: Vec<FieldMatrix> = (0..rad.cols()).map(|c| m.action_of(&rad.column(c))).collect();
    let stacked = FieldMatrix::vstack_all(f, m.dim, &parts);
    column_span(&stacked.kernel_basis())
}

pub fn radical_submodule(m: &Module) -> (Module, Morphism) {
    submodule(m, &radical_span(m)).expect("radical is a submodule")
}

pub fn socle(m: &Module) -> (Module, Morphism) {
    submodule(m, &socle_span(m)).expect("socle is a submodule")
}

pub fn top(m: &Module) -> (Module, Morphism) {
    quotient(m, &radical_span(m)).expect("radical is a submodule")
}

/// Minimal projective cover `A^t -> M` with `t = dim top(M)`.
///
/// The generators are the standard basis vectors outside the pivot
/// coordinates of `rad M`, which lift a basis of the top.
pub fn projective_cover(m: &Module) -> (Module, Morphism) {
    let rad = radical_span(m);
    let gens: Vec<Vec<u64>> = complement_coordinates(&rad)
        .into_iter()
        .map(|c| {
            let mut v = vec![0; m.dim];
            v[c] = 1;
            v
        })
        .collect();
    if gens.is_empty() {
        let z = Module::zero(&m.algebra, m.side);
        return (z.clone(), Morphism::zero(&z, m));
    }
    let epi = free_map(m, &gens);
    (epi.source.clone(), epi)
}

/// Injective hull, obtained by dualizing the projective cover of the dual.
pub fn injective_hull(m: &Module) -> (Module, Morphism) {
    let (_, epi) = projective_cover(&dual(m));
    let mono = dual_morphism(&epi);
    debug_assert_eq!(mono.source, *m);
    (mono.target.clone(), mono)
}

pub fn is_projective(m: &Module) -> bool {
    projective_cover(m).0.dim == m.dim
}

pub fn is_injective(m: &Module) -> bool {
    is_projective(&dual(m))
}

/// Over a finite-dimensional algebra flat and projective coincide.
pub fn is_flat(m: &Module) -> bool {
    is_projective(m)
}

/// Coordinates of `f` in the basis of [`hom_space_matrix`].
pub fn hom_coordinates(basis: &FieldMatrix, f: &FieldMatrix) -> Option<Vec<u64>> {
    let v = FieldMatrix::column_vector(f.field(), &f.vectorize());
    basis.solve(&v).ok().flatten().map(|x| x.column(0))
}
