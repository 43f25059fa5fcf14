//! Factorization over ℚ: squarefree decomposition, factorization modulo a
//! prime large enough to bound every integer factor, and recombination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::integer::{divisors, next_prime};
use super::intpoly;
use super::modular::{self, BigPrime, PrimeModulus, SmallPrime};
use super::{Poly, Rational};
use crate::error::{Error, Result};

/// `p = leading · Π factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.leading.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }
}

/// Yun's algorithm on a monic polynomial. Returns `(a_i, i)` with every
/// `a_i` monic, squarefree and of positive degree.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_one() {
        let a = b.gcd(&d);
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub fn factor_poly(p: &Poly) -> Result<Factorization> {
    let leading = p.leading_coeff().ok_or(Error::ZeroPolynomial)?.clone();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort();
    Ok(Factorization { leading, factors })
}

/// True for polynomials of positive degree with no nontrivial factor.
pub fn is_irreducible(p: &Poly) -> bool {
    if p.degree().unwrap_or(0) == 0 {
        return false;
    }
    match factor_poly(p) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Monic irreducible factors of a squarefree polynomial of positive degree.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.degree() == Some(1) {
        return vec![f.monic()];
    }
    let (_, prim) = f.primitive_integer();
    factor_primitive(prim).into_iter().map(|g| Poly::from_bigints(&g).monic()).collect()
}

fn factor_primitive(f: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    let lc = f[n].abs();
    // integer factors h of f satisfy |h|_inf <= 2^n |f|_2 <= 2^n |f|_1
    let bound: BigInt = &lc * (BigInt::one() << n) * intpoly::norm1(&f) * 2u32;
    let mut p = next_prime(&bound);
    loop {
        let squarefree = if p.bits() < 62 {
            let m = SmallPrime(u64::try_from(&p).expect("fits"));
            squarefree_mod(&m, &f)
        } else {
            squarefree_mod(&BigPrime(p.clone()), &f)
        };
        if squarefree {
            break;
        }
        p = next_prime(&p);
    }
    if p.bits() < 62 {
        let m = SmallPrime(u64::try_from(&p).expect("fits"));
        zassenhaus(&m, f)
    } else {
        zassenhaus(&BigPrime(p), f)
    }
}

fn squarefree_mod<M: PrimeModulus>(m: &M, f: &[BigInt]) -> bool {
    let fp = modular::from_ints(m, f);
    let g = modular::gcd(m, &fp, &modular::derivative(m, &fp));
    modular::degree(&g) == Some(0)
}

fn zassenhaus<M: PrimeModulus>(m: &M, f: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d72_6720);
    let fp = modular::monic(m, &modular::from_ints(m, &f));
    let modular_factors = modular::factor_squarefree(m, &fp, &mut rng);
    if modular_factors.len() == 1 {
        return vec![f];
    }
    let mut remaining: Vec<usize> = (0..modular_factors.len()).collect();
    let mut rest = f;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in combinations(&remaining, size) {
            let lc = m.reduce(rest.last().unwrap());
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| modular::mul(m, &acc, &modular_factors[i]));
            let candidate = intpoly::primitive(&intpoly::symmetric_lift(m, &prod));
            if let Some(q) = intpoly::exact_div(&rest, &candidate) {
                found.push(candidate);
                rest = intpoly::primitive(&q);
                remaining.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every integer `m` with `p(m) = 0`, ascending.
pub fn integer_roots(p: &Poly) -> Result<Vec<BigInt>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, mut f) = p.primitive_integer();
    let mut roots = Vec::new();
    if f[0].is_zero() {
        roots.push(BigInt::zero());
        let k = f.iter().take_while(|c| c.is_zero()).count();
        f.drain(..k);
    }
    if f.len() > 1 {
        let fq = Poly::from_bigints(&f);
        for d in divisors(&f[0]) {
            for c in [-d.clone(), d] {
                if fq.eval(&Rational::from_integer(c.clone())).is_zero() {
                    roots.push(c);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cubic_splits_into_linear_factors() {
        let f = factor_poly(&Poly::from_ints(&[0, -1, 0, 1])).unwrap();
        assert_eq!(f.leading, r(1, 1));
        let expected = vec![
            (Poly::from_ints(&[0, 1]), 1),
            (Poly::from_ints(&[-1, 1]), 1),
            (Poly::from_ints(&[1, 1]), 1),
        ];
        assert_eq!(f.factors, expected);
    }

    #[test]
    fn z_squared_plus_one_is_irreducible() {
        let p = Poly::from_ints(&[1, 0, 1]);
        let f = factor_poly(&p).unwrap();
        assert_eq!(f.factors, vec![(p.clone(), 1)]);
        assert!(is_irreducible(&p));
    }

    #[test]
    fn perfect_square_with_leading_coefficient() {
        // 4z^2 - 4z + 1 = 4 (z - 1/2)^2
        let f = factor_poly(&Poly::from_ints(&[1, -4, 4])).unwrap();
        assert_eq!(f.leading, r(4, 1));
        assert_eq!(f.factors, vec![(Poly::from_coeffs(vec![r(-1, 2), r(1, 1)]), 2)]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(factor_poly(&Poly::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(integer_roots(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // z^4 - 10 z^2 + 1 is irreducible over Q but splits modulo every prime
        let p = Poly::from_ints(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&p));
        let q = &p * &Poly::from_ints(&[-2, 0, 1]);
        let f = factor_poly(&q).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), q);
    }

    #[test]
    fn squarefree_parts() {
        // (z-1)^3 (z+2)
        let p = &Poly::from_ints(&[-1, 1]).pow(3) * &Poly::from_ints(&[2, 1]);
        let sq = squarefree_decomposition(&p);
        assert_eq!(sq, vec![(Poly::from_ints(&[2, 1]), 1), (Poly::from_ints(&[-1, 1]), 3)]);
    }

    #[test]
    fn integer_root_examples() {
        let ints = |p: &Poly| integer_roots(p).unwrap();
        assert_eq!(ints(&Poly::from_ints(&[2, -3, 1])), vec![BigInt::from(1), BigInt::from(2)]);
        assert!(ints(&Poly::from_ints(&[1, 0, 1])).is_empty());
        assert!(ints(&Poly::from_ints(&[-1, 2])).is_empty());
        assert_eq!(ints(&Poly::from_ints(&[0, 0, 3])), vec![BigInt::zero()]);
        assert_eq!(ints(&Poly::constant(r(5, 1))), Vec::<BigInt>::new());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn factorization_roundtrip(ps in prop::collection::vec(small_poly(), 1..4)) {
            let f = ps.iter().fold(Poly::one(), |a, b| &a * b);
            prop_assume!(!f.is_zero());
            let fac = factor_poly(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (q, e) in &fac.factors {
                prop_assert!(q.is_monic() && *e >= 1 && is_irreducible(q));
            }
        }

        #[test]
        fn integer_roots_complete(roots in prop::collection::vec(-20i64..=20, 0..5), cof in small_poly()) {
            prop_assume!(!cof.is_zero());
            let p = roots.iter().fold(cof.clone(), |a, &x| &a * &Poly::from_ints(&[-x, 1]));
            let found = integer_roots(&p).unwrap();
            for x in &roots {
                prop_assert!(found.contains(&BigInt::from(*x)));
            }
            for x in &found {
                prop_assert!(p.eval(&Rational::from_integer(x.clone())).is_zero());
            }
            prop_assert!(found.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
