//! Subspaces of 𝔽^{d+1}, decompositions and flags; the three flags attached
//! to an upper triangular matrix; (total) oppositeness; and the Billiard
//! Array obtained by intersecting three totally opposite flags.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::triangle::{all_lines, black_cliques, Location, Triangle};

/// A subspace held as the reduced row-echelon form of any spanning set.
/// Two subspaces are equal iff their bases are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        let m = if vectors.is_empty() {
            Matrix::zeros(field, 0, ambient)
        } else {
            Matrix::from_rows(field, vectors.to_vec())?
        };
        Ok(Subspace { basis: m.rref() })
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
        }
    }

    /// `span{e_i : i ∈ indices}`.
    pub fn coordinate(field: Field, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = indices
            .into_iter()
            .map(|i| unit_vector(field, ambient, i))
            .collect();
        Subspace::span(field, ambient, &vectors).expect("unit vectors have the ambient length")
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Rows of the reduced row-echelon basis.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::MixedFields(self.field(), other.field()));
        }
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                found: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        let mut rows = self.basis();
        rows.push(v.to_vec());
        let with_v = Subspace::span(self.field(), self.ambient(), &rows)?;
        Ok(with_v.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.sum(other)?.dim() == other.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis();
        rows.extend(other.basis());
        Subspace::span(self.field(), self.ambient(), &rows)
    }

    /// `A ∩ B` from the kernel of the stacked bases: `y·A = z·B` gives the
    /// common vector `y·A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (field, n) = (self.field(), self.ambient());
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(field, n));
        }
        let k = self.dim();
        let mut stacked = self.basis();
        stacked.extend(other.basis());
        // Columns of the n×(k+m) system are the basis vectors of A and B.
        let system = Matrix::from_rows(field, stacked)?.transpose();
        let vectors: Vec<Vec<Scalar>> = system
            .kernel()
            .into_iter()
            .map(|coeffs| {
                let mut x = vec![field.zero(); n];
                for (c, row) in coeffs[..k].iter().zip(self.basis()) {
                    for (xi, ri) in x.iter_mut().zip(row) {
                        *xi = &*xi + c * ri;
                    }
                }
                x
            })
            .collect();
        Subspace::span(field, n, &vectors)
    }
}

fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// A chain `W_0 ⊆ W_1 ⊆ … ⊆ W_d` with `dim W_i = i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    components: Vec<Subspace>,
}

impl Flag {
    pub fn new(components: Vec<Subspace>) -> Result<Flag> {
        let Some(first) = components.first() else {
            return Err(Error::NotAFlag("no components".into()));
        };
        let (field, n) = (first.field(), first.ambient());
        if components.len() != n {
            return Err(Error::NotAFlag(format!(
                "{} components in a space of dimension {n}",
                components.len()
            )));
        }
        for (i, w) in components.iter().enumerate() {
            if w.field() != field || w.ambient() != n {
                return Err(Error::NotAFlag(format!("component {i} lives in a different space")));
            }
            if w.dim() != i + 1 {
                return Err(Error::NotAFlag(format!("component {i} has dimension {}", w.dim())));
            }
            if i > 0 && !components[i - 1].is_subspace_of(w)? {
                return Err(Error::NotAFlag(format!("component {} is not inside component {i}", i - 1)));
            }
        }
        Ok(Flag { components })
    }

    /// `d`, so the flag has `d + 1` components.
    pub fn diameter(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, i: usize) -> &Subspace {
        &self.components[i]
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn field(&self) -> Field {
        self.components[0].field()
    }
}

/// The flag induced by a basis: `W_i` is the span of the first `i+1` vectors.
pub fn flag_from_basis(field: Field, vectors: &[Vec<Scalar>]) -> Result<Flag> {
    let n = vectors.len();
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::NotABasis);
    }
    if Matrix::from_rows(field, vectors.to_vec())?.rank() != n {
        return Err(Error::NotABasis);
    }
    let components = (1..=n)
        .map(|k| Subspace::span(field, n, &vectors[..k]))
        .collect::<Result<Vec<_>>>()?;
    Flag::new(components)
}

/// A sequence of one-dimensional subspaces whose sum is direct and equal to
/// the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    parts: Vec<Subspace>,
}

impl Decomposition {
    pub fn new(parts: Vec<Subspace>) -> Result<Decomposition> {
        let Some(first) = parts.first() else {
            return Err(Error::NotABasis);
        };
        let (field, n) = (first.field(), first.ambient());
        if parts.len() != n || parts.iter().any(|p| p.dim() != 1 || p.ambient() != n) {
            return Err(Error::NotABasis);
        }
        let rows: Vec<Vec<Scalar>> = parts.iter().flat_map(Subspace::basis).collect();
        if Matrix::from_rows(field, rows)?.rank() != n {
            return Err(Error::NotABasis);
        }
        Ok(Decomposition { parts })
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn inversion(&self) -> Decomposition {
        Decomposition {
            parts: self.parts.iter().rev().cloned().collect(),
        }
    }

    /// `W_i = V_0 + … + V_i`
    pub fn induced_flag(&self) -> Flag {
        let field = self.parts[0].field();
        let vectors: Vec<Vec<Scalar>> = self.parts.iter().flat_map(Subspace::basis).collect();
        flag_from_basis(field, &vectors).expect("a decomposition is a basis")
    }
}

/// The flags `U`, `U′`, `U″` attached to an invertible upper triangular `T`,
/// with `u_i = e_i` and `v_j` the `j`-th column of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFlags {
    /// `U_i = span{u_0, …, u_i}`
    pub u: Flag,
    /// `U′_i = span{u_d, …, u_{d-i}}`
    pub u_prime: Flag,
    /// `U″_i = span{v_d, …, v_{d-i}}`
    pub u_double_prime: Flag,
}

pub fn flags_from_matrix(t: &Matrix) -> Result<MatrixFlags> {
    if !t.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    let field = t.field();
    let n = t.rows();
    if n == 0 || t.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let standard: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vector(field, n, i)).collect();
    let reversed_standard: Vec<Vec<Scalar>> = standard.iter().rev().cloned().collect();
    let reversed_columns: Vec<Vec<Scalar>> = (0..n).rev().map(|j| t.column(j)).collect();
    Ok(MatrixFlags {
        u: flag_from_basis(field, &standard)?,
        u_prime: flag_from_basis(field, &reversed_standard)?,
        u_double_prime: flag_from_basis(field, &reversed_columns)?,
    })
}

fn same_space(flags: &[&Flag]) -> bool {
    let first = flags[0];
    flags
        .iter()
        .all(|f| f.field() == first.field() && f.diameter() == first.diameter())
}

/// Opposite flags, tested on the antidiagonal only:
/// `W_i ∩ W′_{d-1-i} = 0` for `0 ≤ i ≤ d-1`.
pub fn is_opposite(f: &Flag, g: &Flag) -> bool {
    if !same_space(&[f, g]) {
        return false;
    }
    let d = f.diameter();
    (0..d).all(|i| {
        f.component(i)
            .intersect(g.component(d - 1 - i))
            .expect("same space")
            .is_zero()
    })
}

/// Opposite flags, tested on every pair: `W_i ∩ W′_j = 0` whenever `i + j < d`.
pub fn is_opposite_full(f: &Flag, g: &Flag) -> bool {
    if !same_space(&[f, g]) {
        return false;
    }
    let d = f.diameter();
    (0..=d).all(|i| {
        (0..=d)
            .filter(|j| i + j < d)
            .all(|j| f.component(i).intersect(g.component(j)).expect("same space").is_zero())
    })
}

/// For opposite flags, the decomposition `V_i = W_i ∩ W′_{d-i}` that induces
/// `W` and whose inversion induces `W′`.
pub fn opposite_decomposition(f: &Flag, g: &Flag) -> Option<Decomposition> {
    if !is_opposite(f, g) {
        return None;
    }
    let d = f.diameter();
    let parts = (0..=d)
        .map(|i| f.component(i).intersect(g.component(d - i)))
        .collect::<Result<Vec<_>>>()
        .ok()?;
    Decomposition::new(parts).ok()
}

fn triple_intersection(f: &Flag, g: &Flag, h: &Flag, r: usize, s: usize, t: usize) -> Subspace {
    let d = f.diameter();
    f.component(d - r)
        .intersect(g.component(d - s))
        .and_then(|x| x.intersect(h.component(d - t)))
        .expect("same space")
}

/// `W_{d-r} ∩ W′_{d-s} ∩ W″_{d-t} = 0` for all `0 ≤ r,s,t ≤ d` with `r+s+t > d`.
pub fn is_totally_opposite(f: &Flag, g: &Flag, h: &Flag) -> bool {
    if !same_space(&[f, g, h]) {
        return false;
    }
    let d = f.diameter();
    for r in 0..=d {
        for s in 0..=d {
            for t in 0..=d {
                if r + s + t > d && !triple_intersection(f, g, h, r, s, t).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// A one-dimensional subspace at every location of Δ_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilliardArray {
    d: usize,
    spaces: Vec<Subspace>,
}

impl BilliardArray {
    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn get(&self, l: Location) -> Option<&Subspace> {
        Triangle::new(self.d).index_of(l).map(|i| &self.spaces[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Location, &Subspace)> {
        Triangle::new(self.d).locations().zip(self.spaces.iter())
    }

    /// Line sums are direct and black-clique sums are not.
    pub fn satisfies_axioms(&self) -> bool {
        let dim_of_sum = |locs: &[Location]| {
            let field = self.spaces[0].field();
            let rows: Vec<Vec<Scalar>> = locs.iter().flat_map(|&l| self.get(l).unwrap().basis()).collect();
            Subspace::span(field, self.d + 1, &rows).unwrap().dim()
        };
        let sizes_ok = self.spaces.iter().all(|s| s.dim() == 1);
        let lines_ok = all_lines(self.d).iter().all(|l| dim_of_sum(l) == l.len());
        let cliques_ok = black_cliques(self.d).iter().all(|(_, c)| dim_of_sum(c) < 3);
        sizes_ok && lines_ok && cliques_ok
    }
}

/// `B_λ = W_{d-r} ∩ W′_{d-s} ∩ W″_{d-t}` for every `λ = (r,s,t)`.
pub fn billiard_from_flags(f: &Flag, g: &Flag, h: &Flag) -> Result<BilliardArray> {
    if !is_totally_opposite(f, g, h) {
        return Err(Error::NotTotallyOpposite);
    }
    let d = f.diameter();
    let spaces = Triangle::new(d)
        .locations()
        .map(|l| {
            let b = triple_intersection(f, g, h, l.r as usize, l.s as usize, l.t as usize);
            debug_assert_eq!(b.dim(), 1);
            b
        })
        .collect();
    Ok(BilliardArray { d, spaces })
}
