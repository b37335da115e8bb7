//! Value functions on Δ_d and the maps between very good matrices and value
//! functions: the window-determinant map and its inverse, the hexagon-ratio
//! map and its fine inverse, and the nice / fine canonical forms that decide
//! diagonal equivalence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::triangle::{hexagon, hexagon_center, Location, Triangle};

/// A nonzero scalar at every location of Δ_d, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueFunction {
    d: usize,
    field: Field,
    values: Vec<Scalar>,
}

impl ValueFunction {
    /// `values` must follow the canonical order of Δ_d.
    pub fn new(d: usize, field: Field, values: Vec<Scalar>) -> Result<ValueFunction> {
        let tri = Triangle::new(d);
        if values.len() != tri.len() {
            return Err(Error::DimensionMismatch {
                expected: tri.len(),
                found: values.len(),
            });
        }
        for (l, v) in tri.locations().zip(&values) {
            if v.field() != field {
                return Err(Error::MixedFields(field, v.field()));
            }
            if v.is_zero() {
                return Err(Error::ZeroValue(l));
            }
        }
        Ok(ValueFunction { d, field, values })
    }

    pub fn from_fn(d: usize, field: Field, mut f: impl FnMut(Location) -> Scalar) -> Result<ValueFunction> {
        let values = Triangle::new(d).locations().map(&mut f).collect();
        ValueFunction::new(d, field, values)
    }

    pub fn constant(d: usize, value: Scalar) -> Result<ValueFunction> {
        let field = value.field();
        ValueFunction::from_fn(d, field, |_| value.clone())
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, l: Location) -> Option<&Scalar> {
        Triangle::new(self.d).index_of(l).map(|i| &self.values[i])
    }

    /// The value at `l`, or 1 when `l` lies outside Δ_d.
    pub fn get_or_one(&self, l: Location) -> Scalar {
        self.get(l).cloned().unwrap_or_else(|| self.field.one())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Location, &Scalar)> {
        Triangle::new(self.d).locations().zip(self.values.iter())
    }
}

/// `det T[λ]`, where `T[λ] = T[t, d-r]` inside Δ_d and the empty matrix
/// (determinant 1) outside.
pub fn location_det(t: &Matrix, l: Location) -> Scalar {
    let d = t.diameter();
    if !l.in_triangle(d) {
        return t.field().one();
    }
    t.window(l.t as usize, d - l.r as usize).expect("location in range").det()
}

pub(crate) fn require_very_good(t: &Matrix) -> Result<()> {
    if !t.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    match t.first_singular_window() {
        Some((i, j)) => Err(Error::NotVeryGood(i, j)),
        None => Ok(()),
    }
}

/// `λ ↦ det T[λ]` for a very good upper triangular `T`.
pub fn window_det_function(t: &Matrix) -> Result<ValueFunction> {
    require_very_good(t)?;
    ValueFunction::from_fn(t.diameter(), t.field(), |l| location_det(t, l))
}

/// The unique very good upper triangular `T` whose window determinants are
/// `f`.
///
/// Entries are solved in order of `i + j`. The window `T[j-i, j]` has bottom
/// right entry `T_ij` and every other entry already known; its determinant
/// is affine in `T_ij` with slope `det T[j-i, j-1]`, a value of `f`.
pub fn matrix_from_window_dets(f: &ValueFunction) -> Result<Matrix> {
    let d = f.diameter();
    let field = f.field();
    let at = |l: Location| f.get(l).expect("location in triangle").clone();
    let mut t = Matrix::zeros(field, d + 1, d + 1);
    for sum in 0..=2 * d {
        for i in 0..=sum.min(d) {
            let j = sum - i;
            if j > d || i > j {
                continue;
            }
            let target = at(Location::new((d - j) as i64, i as i64, (j - i) as i64));
            let value = if i == 0 {
                target
            } else {
                let slope = t.window(j - i, j - 1)?.det();
                debug_assert!(!slope.is_zero(), "pivot det T[{},{}] vanished", j - i, j - 1);
                let offset = t.window(j - i, j)?.det();
                (target - offset).checked_div(&slope)?
            };
            t.set(i, j, value)?;
        }
    }
    Ok(t)
}

/// The hexagon ratio at `μ = (r+1, s, t+1)` for every `τ = (r,s,t) ∈ Δ_{d-2}`,
/// with `f = 1` outside Δ_d.
pub fn hexagon_ratios(f: &ValueFunction) -> Result<ValueFunction> {
    let d = f.diameter();
    if d < 2 {
        return Err(Error::DiameterTooSmall { d, min: 2 });
    }
    ValueFunction::from_fn(d - 2, f.field(), |tau| {
        let h = hexagon(hexagon_center(tau));
        let num = h.numerator().iter().fold(f.field().one(), |acc, &l| acc * f.get_or_one(l));
        let den = h.denominator().iter().fold(f.field().one(), |acc, &l| acc * f.get_or_one(l));
        num / den
    })
}

/// The unique fine `f` on Δ_d with `hexagon_ratios(f) = g`, where
/// `d = g.diameter() + 2`.
///
/// `f` is 1 where `s = 0` or `t = 0`. Elsewhere `λ = μ - α` for the hexagon
/// centred at `μ = λ + α`, whose ratio is `g(τ)` with `τ = (r, s-1, t-1)`;
/// every other hexagon vertex has smaller `s - r`, so sweeping by `s - r`
/// solves each value once.
pub fn fine_preimage(g: &ValueFunction) -> Result<ValueFunction> {
    let d = g.diameter() + 2;
    let field = g.field();
    let tri = Triangle::new(d);
    let mut order: Vec<Location> = tri.locations().collect();
    order.sort_by_key(|l| l.s - l.r);
    let mut values: Vec<Option<Scalar>> = vec![None; tri.len()];
    let value_at = |values: &[Option<Scalar>], l: Location| match tri.index_of(l) {
        Some(i) => values[i].clone().expect("solved earlier in the sweep"),
        None => field.one(),
    };
    for lambda in order {
        let v = if lambda.s == 0 || lambda.t == 0 {
            field.one()
        } else {
            let tau = Location::new(lambda.r, lambda.s - 1, lambda.t - 1);
            let h = hexagon(hexagon_center(tau));
            debug_assert_eq!(h.minus_alpha, lambda);
            let num = h.numerator().iter().fold(field.one(), |acc, &l| acc * value_at(&values, l));
            let den = [h.minus_beta, h.minus_gamma]
                .iter()
                .fold(g.get(tau).expect("tau in smaller triangle").clone(), |acc, &l| {
                    acc * value_at(&values, l)
                });
            num / den
        };
        values[tri.index_of(lambda).expect("in triangle")] = Some(v);
    }
    ValueFunction::new(d, field, values.into_iter().map(|v| v.expect("all solved")).collect())
}

/// Value 1 on the 2-boundary and 3-boundary.
pub fn is_fine(f: &ValueFunction) -> bool {
    f.iter().all(|(l, v)| (l.s != 0 && l.t != 0) || v.is_one())
}

/// Top row and diagonal all 1.
pub fn is_nice(t: &Matrix) -> bool {
    t.is_square() && (0..t.rows()).all(|i| t.get(0, i).is_one() && t.get(i, i).is_one())
}

/// The nice representative `HTK` of the class of `T`, with the diagonal
/// witnesses `H_ii = T_0i / T_ii`, `K_ii = 1 / T_0i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceForm {
    pub matrix: Matrix,
    pub h: Vec<Scalar>,
    pub k: Vec<Scalar>,
}

pub fn nice_form(t: &Matrix) -> Result<NiceForm> {
    require_very_good(t)?;
    let n = t.rows();
    let h: Vec<Scalar> = (0..n).map(|i| t.get(0, i) / t.get(i, i)).collect();
    let k: Vec<Scalar> = (0..n).map(|i| t.get(0, i).inv()).collect::<Result<_>>()?;
    let mut m = t.clone();
    for i in 0..n {
        for j in i..n {
            m.set(i, j, &h[i] * t.get(i, j) * &k[j])?;
        }
    }
    Ok(NiceForm { matrix: m, h, k })
}

fn check_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::MixedFields(a.field(), b.field()));
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    Ok(())
}

/// `T ~ T′` iff `T′ = HTK` for invertible diagonal `H`, `K`; decided by
/// comparing nice forms.
pub fn matrices_equivalent(a: &Matrix, b: &Matrix) -> Result<bool> {
    check_pair(a, b)?;
    Ok(nice_form(a)?.matrix == nice_form(b)?.matrix)
}

/// The unique fine value function equivalent to `f`.
pub fn fine_form(f: &ValueFunction) -> Result<ValueFunction> {
    let t = matrix_from_window_dets(f)?;
    window_det_function(&nice_form(&t)?.matrix)
}

pub fn vf_equivalent(f: &ValueFunction, g: &ValueFunction) -> Result<bool> {
    if f.field() != g.field() {
        return Err(Error::MixedFields(f.field(), g.field()));
    }
    if f.diameter() != g.diameter() {
        return Err(Error::DimensionMismatch {
            expected: f.diameter(),
            found: g.diameter(),
        });
    }
    Ok(fine_form(f)? == fine_form(g)?)
}

/// A random nonzero scalar: uniform on GF(p)ˣ, or `±a/b` with
/// `1 ≤ a ≤ 9`, `1 ≤ b ≤ 5` over ℚ.
pub fn random_nonzero(field: Field, rng: &mut impl Rng) -> Scalar {
    match field.order() {
        Some(p) => field.from_bigint(&rng.random_range(1..p).into()),
        None => {
            let num: i64 = rng.random_range(1..=9);
            let den: i64 = rng.random_range(1..=5);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            field.ratio(sign * num, den).expect("nonzero denominator")
        }
    }
}

pub fn random_value_function(d: usize, field: Field, rng: &mut impl Rng) -> ValueFunction {
    ValueFunction::from_fn(d, field, |_| random_nonzero(field, rng)).expect("values are nonzero")
}

/// A very good upper triangular matrix, deterministic in `seed`: the inverse
/// window-determinant map applied to a random value function.
pub fn random_very_good(d: usize, field: Field, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_value_function(d, field, &mut rng);
    matrix_from_window_dets(&f).expect("nonzero values always invert")
}
