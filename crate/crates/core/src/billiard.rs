//! Concrete Billiard Arrays: a chosen nonzero vector at every location.
//! The standard array of a very good matrix, edge ratios, and B-values by
//! brace chasing and by window determinants.

use crate::error::{Error, Result};
use crate::flags::BilliardArray;
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::triangle::{all_lines, black_cliques, completion, hexagon, hexagon_center, white_clique, Location, Triangle};
use crate::valuefn::{location_det, require_very_good, ValueFunction};

/// Vectors `𝓑_λ = R·c(λ)` for a fixed invertible reference matrix `R`.
///
/// The standard array uses `R = T`, so `c(λ)` holds coordinates in the
/// basis of columns `v_j` of `T`. Arrays read off subspaces use `R = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteBilliardArray {
    d: usize,
    field: Field,
    reference: Matrix,
    coeffs: Vec<Vec<Scalar>>,
}

impl ConcreteBilliardArray {
    /// Vectors given in standard coordinates, in canonical order.
    pub fn from_vectors(d: usize, field: Field, vectors: Vec<Vec<Scalar>>) -> Result<ConcreteBilliardArray> {
        let tri = Triangle::new(d);
        if vectors.len() != tri.len() {
            return Err(Error::DimensionMismatch {
                expected: tri.len(),
                found: vectors.len(),
            });
        }
        for v in &vectors {
            if v.len() != d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: d + 1,
                    found: v.len(),
                });
            }
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::MixedFields(field, x.field()));
            }
        }
        Ok(ConcreteBilliardArray {
            d,
            field,
            reference: Matrix::identity(field, d + 1),
            coeffs: vectors,
        })
    }

    /// The first basis vector of each one-dimensional subspace.
    pub fn from_billiard_array(ba: &BilliardArray) -> Result<ConcreteBilliardArray> {
        let d = ba.diameter();
        let mut field = None;
        let mut vectors = Vec::new();
        for (_, space) in ba.iter() {
            field = Some(space.field());
            let basis = space.basis();
            if basis.len() != 1 {
                return Err(Error::NotABasis);
            }
            vectors.extend(basis);
        }
        let field = field.expect("a triangle is never empty");
        ConcreteBilliardArray::from_vectors(d, field, vectors)
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn reference(&self) -> &Matrix {
        &self.reference
    }

    /// Coordinates of `𝓑_λ` in the columns of the reference matrix.
    pub fn coefficients(&self, l: Location) -> Result<&[Scalar]> {
        let i = Triangle::new(self.d)
            .index_of(l)
            .ok_or(Error::NotInTriangle(l, self.d))?;
        Ok(&self.coeffs[i])
    }

    /// `𝓑_λ` in standard coordinates.
    pub fn vector(&self, l: Location) -> Result<Vec<Scalar>> {
        self.reference.mul_vec(self.coefficients(l)?)
    }

    /// The indices where the coefficients of `𝓑_λ` are nonzero.
    pub fn support(&self, l: Location) -> Result<Vec<usize>> {
        Ok(self
            .coefficients(l)?
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect())
    }

    /// Overwrites the coefficients at `l`.
    pub fn replace(&mut self, l: Location, coeffs: Vec<Scalar>) -> Result<()> {
        let i = Triangle::new(self.d)
            .index_of(l)
            .ok_or(Error::NotInTriangle(l, self.d))?;
        if coeffs.len() != self.d + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.d + 1,
                found: coeffs.len(),
            });
        }
        self.coeffs[i] = coeffs;
        Ok(())
    }

    fn rank_of(&self, locs: &[Location]) -> usize {
        let rows: Vec<Vec<Scalar>> = locs.iter().map(|&l| self.coefficients(l).unwrap().to_vec()).collect();
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_rows(self.field, rows).unwrap().rank()
    }
}

/// The standard array of a very good `T`.
///
/// `c_t(λ) = 1`. For `s > 0` the tail `(c_{t+1}, …, c_{d-r})` solves
/// `T[t+1, d-r]·u = -(T_{0t}, …, T_{s-1,t})`, which makes the first `s`
/// coordinates of `𝓑_λ` vanish. For `s = 0`, `𝓑_λ = v_t`.
pub fn standard_cba(t: &Matrix) -> Result<ConcreteBilliardArray> {
    require_very_good(t)?;
    let d = t.diameter();
    let field = t.field();
    let mut coeffs = Vec::with_capacity(Triangle::new(d).len());
    for l in Triangle::new(d).locations() {
        let (r, s, tt) = (l.r as usize, l.s as usize, l.t as usize);
        let mut c = vec![field.zero(); d + 1];
        c[tt] = field.one();
        if s > 0 {
            let rhs: Vec<Scalar> = (0..s).map(|i| -t.get(i, tt)).collect();
            let tail = t.window(tt + 1, d - r)?.solve(&rhs)?;
            for (k, x) in tail.into_iter().enumerate() {
                c[tt + 1 + k] = x;
            }
        }
        coeffs.push(c);
    }
    Ok(ConcreteBilliardArray {
        d,
        field,
        reference: t.clone(),
        coeffs,
    })
}

/// Vectors on each line independent, vectors on each black clique dependent.
pub fn verify_billiard(cba: &ConcreteBilliardArray) -> bool {
    let d = cba.diameter();
    let lines_ok = all_lines(d).iter().all(|line| cba.rank_of(line) == line.len());
    let cliques_ok = black_cliques(d).iter().all(|(_, c)| cba.rank_of(c) < 3);
    lines_ok && cliques_ok
}

/// The scalar `x` with `𝓑_λ + x·𝓑_μ ∈ span 𝓑_ν`, `ν` completing the edge.
///
/// Read off the one-dimensional kernel of the three-column matrix
/// `[𝓑_λ 𝓑_μ 𝓑_ν]`.
pub fn edge_ratio(cba: &ConcreteBilliardArray, lambda: Location, mu: Location) -> Result<Scalar> {
    let nu = completion(lambda, mu, cba.diameter())?;
    let cols = [lambda, mu, nu]
        .iter()
        .map(|&l| cba.coefficients(l).map(<[Scalar]>::to_vec))
        .collect::<Result<Vec<_>>>()?;
    let kernel = Matrix::from_rows(cba.field(), cols)?.transpose().kernel();
    match kernel.as_slice() {
        [k] if !k[0].is_zero() && !k[1].is_zero() => k[1].checked_div(&k[0]),
        _ => Err(Error::InvalidBilliardArray(format!(
            "no brace on the edge {lambda} {mu}"
        ))),
    }
}

fn require_diameter(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DiameterTooSmall { d, min: 2 });
    }
    Ok(())
}

fn require_tau(tau: Location, d: usize) -> Result<()> {
    require_diameter(d)?;
    if !tau.in_triangle(d - 2) {
        return Err(Error::NotInTriangle(tau, d - 2));
    }
    Ok(())
}

/// Product of the edge ratios around the white clique `(λ, μ, ν)` of `τ`.
pub fn bvalue_brace(cba: &ConcreteBilliardArray, tau: Location) -> Result<Scalar> {
    require_tau(tau, cba.diameter())?;
    let [l, m, n] = white_clique(tau);
    Ok(edge_ratio(cba, l, m)? * edge_ratio(cba, m, n)? * edge_ratio(cba, n, l)?)
}

fn bvalue_det_unchecked(t: &Matrix, tau: Location) -> Scalar {
    let h = hexagon(hexagon_center(tau));
    let product = |ls: [Location; 3]| {
        ls.iter()
            .fold(t.field().one(), |acc, &l| acc * location_det(t, l))
    };
    product(h.numerator()) / product(h.denominator())
}

/// The B-value at `τ` from window determinants around the hexagon centred at
/// `μ = (r+1, s, t+1)`.
pub fn bvalue_det(t: &Matrix, tau: Location) -> Result<Scalar> {
    require_very_good(t)?;
    require_tau(tau, t.diameter())?;
    Ok(bvalue_det_unchecked(t, tau))
}

/// `τ ↦ bvalue_det(T, τ)` on Δ_{d-2}.
pub fn bvalue_function(t: &Matrix) -> Result<ValueFunction> {
    require_very_good(t)?;
    let d = t.diameter();
    require_diameter(d)?;
    ValueFunction::from_fn(d - 2, t.field(), |tau| bvalue_det_unchecked(t, tau))
}

/// `τ ↦ bvalue_brace(cba, τ)` on Δ_{d-2}.
pub fn bvalue_function_brace(cba: &ConcreteBilliardArray) -> Result<ValueFunction> {
    let d = cba.diameter();
    require_diameter(d)?;
    let values = Triangle::new(d - 2)
        .locations()
        .map(|tau| bvalue_brace(cba, tau))
        .collect::<Result<Vec<_>>>()?;
    ValueFunction::new(d - 2, cba.field(), values)
}

/// `𝓑_λ - 𝓑_μ ∈ span 𝓑_ν` on every black clique `(λ, μ, ν)`.
pub fn is_standard(cba: &ConcreteBilliardArray) -> bool {
    black_cliques(cba.diameter()).iter().all(|(_, [l, m, n])| {
        let a = cba.coefficients(*l).unwrap();
        let b = cba.coefficients(*m).unwrap();
        let diff: Vec<Scalar> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let rows = vec![diff, cba.coefficients(*n).unwrap().to_vec()];
        Matrix::from_rows(cba.field(), rows).unwrap().rank() < 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{billiard_from_flags, flags_from_matrix};
    use crate::triangle::ALPHA;

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Q, rows).unwrap()
    }

    fn example() -> Matrix {
        m(&[&[1, 1, 1], &[0, 1, 3], &[0, 0, 1]])
    }

    fn q(s: &str) -> Scalar {
        Q.parse_scalar(s).unwrap()
    }

    fn v(xs: &[&str]) -> Vec<Scalar> {
        xs.iter().map(|x| q(x)).collect()
    }

    #[test]
    fn standard_cba_of_example() {
        let cba = standard_cba(&example()).unwrap();
        let expected = [
            ((2, 0, 0), ["1", "0", "0"]),
            ((1, 1, 0), ["0", "-1", "0"]),
            ((1, 0, 1), ["1", "1", "0"]),
            ((0, 2, 0), ["0", "0", "1/2"]),
            ((0, 1, 1), ["0", "-2", "-1"]),
            ((0, 0, 2), ["1", "3", "1"]),
        ];
        for ((r, s, t), vec) in expected {
            assert_eq!(cba.vector(Location::new(r, s, t)).unwrap(), v(&vec));
        }
        assert_eq!(cba.coefficients(Location::new(0, 1, 1)).unwrap(), v(&["0", "1", "-1"]).as_slice());
        assert_eq!(cba.support(Location::new(2, 0, 0)).unwrap(), vec![0]);
    }

    #[test]
    fn normalization_and_support() {
        let t = m(&[&[2, 1, 4, 1], &[0, 3, 1, 5], &[0, 0, 1, 2], &[0, 0, 0, 7]]);
        let cba = standard_cba(&t).unwrap();
        let d = 3;
        for l in Triangle::new(d).locations() {
            let c = cba.coefficients(l).unwrap();
            assert!(c[l.t as usize].is_one());
            assert!(cba.support(l).unwrap().iter().all(|&i| i >= l.t as usize && i <= d - l.r as usize));
            if l.s == 0 {
                assert_eq!(cba.support(l).unwrap(), vec![l.t as usize]);
            }
        }
        assert!(verify_billiard(&cba));
        assert!(is_standard(&cba));
    }

    #[test]
    fn not_very_good_rejected() {
        assert_eq!(standard_cba(&Matrix::identity(Q, 3)), Err(Error::NotVeryGood(1, 1)));
    }

    #[test]
    fn edge_ratios_of_example() {
        let cba = standard_cba(&example()).unwrap();
        let l = |r, s, t| Location::new(r, s, t);
        assert_eq!(edge_ratio(&cba, l(0, 1, 1), l(1, 0, 1)).unwrap(), q("-1"));
        assert_eq!(edge_ratio(&cba, l(1, 0, 1), l(1, 1, 0)).unwrap(), q("1"));
        assert_eq!(edge_ratio(&cba, l(1, 1, 0), l(0, 1, 1)).unwrap(), q("-1/2"));
        assert_eq!(edge_ratio(&cba, l(1, 0, 1), l(0, 1, 1)).unwrap(), q("-1"));
        assert_eq!(edge_ratio(&cba, l(2, 0, 0), l(0, 1, 1)), Err(Error::NotAdjacent(l(2, 0, 0), l(0, 1, 1))));
    }

    #[test]
    fn alpha_edges_have_ratio_minus_one() {
        let t = m(&[&[2, 1, 4, 1], &[0, 3, 1, 5], &[0, 0, 1, 2], &[0, 0, 0, 7]]);
        let cba = standard_cba(&t).unwrap();
        for nu in Triangle::new(3).locations() {
            if (nu + ALPHA).in_triangle(3) {
                assert_eq!(edge_ratio(&cba, nu, nu + ALPHA).unwrap(), q("-1"));
            }
        }
    }

    #[test]
    fn bvalue_of_example() {
        let t = example();
        let cba = standard_cba(&t).unwrap();
        let tau = Location::new(0, 0, 0);
        assert_eq!(bvalue_brace(&cba, tau).unwrap(), q("1/2"));
        assert_eq!(bvalue_det(&t, tau).unwrap(), q("1/2"));
        assert_eq!(bvalue_function(&t).unwrap().values(), &[q("1/2")]);
        assert_eq!(bvalue_function(&Matrix::identity(Q, 2)), Err(Error::NotVeryGood(1, 1)));
        assert_eq!(
            bvalue_function(&m(&[&[1, 1], &[0, 1]])),
            Err(Error::DiameterTooSmall { d: 1, min: 2 })
        );
    }

    #[test]
    fn flags_route_agrees() {
        let t = m(&[&[2, 1, 4, 1], &[0, 3, 1, 5], &[0, 0, 1, 2], &[0, 0, 0, 7]]);
        let cba = standard_cba(&t).unwrap();
        let mf = flags_from_matrix(&t).unwrap();
        let ba = billiard_from_flags(&mf.u, &mf.u_prime, &mf.u_double_prime).unwrap();
        for (l, space) in ba.iter() {
            assert!(space.contains(&cba.vector(l).unwrap()).unwrap());
        }
        let from_flags = ConcreteBilliardArray::from_billiard_array(&ba).unwrap();
        assert!(verify_billiard(&from_flags));
        assert_eq!(bvalue_function_brace(&from_flags).unwrap(), bvalue_function(&t).unwrap());
    }

    #[test]
    fn repeated_vector_fails_axioms() {
        let mut cba = standard_cba(&example()).unwrap();
        let copy = cba.coefficients(Location::new(0, 0, 2)).unwrap().to_vec();
        cba.replace(Location::new(0, 1, 1), copy).unwrap();
        assert!(!verify_billiard(&cba));
    }

    #[test]
    fn singleton_array() {
        let cba = ConcreteBilliardArray::from_vectors(0, Q, vec![v(&["3"])]).unwrap();
        assert!(verify_billiard(&cba));
        let zero = ConcreteBilliardArray::from_vectors(0, Q, vec![v(&["0"])]).unwrap();
        assert!(!verify_billiard(&zero));
    }
}
