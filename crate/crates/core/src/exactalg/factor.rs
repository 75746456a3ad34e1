//! Factorization of univariate rational polynomials into monic irreducibles.
//!
//! The route is the classical one: Yun's squarefree decomposition over the
//! rationals, then for every squarefree part a Zassenhaus factorization of the
//! associated monic integer polynomial (distinct/equal degree factorization
//! modulo a few small primes, linear Hensel lifting, and recombination of the
//! lifted factors by trial division).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::poly::RatPoly;
use super::rational::Rational;
use super::AlgError;

const SMALL_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
];

/// How many admissible primes are tried before settling on the one giving
/// the fewest modular factors.
const PRIME_TRIALS: usize = 5;

/// Factors `p` into `(monic irreducible, multiplicity)` pairs, sorted by
/// degree and then coefficients. The product of the factors raised to their
/// multiplicities, times the leading coefficient of `p`, is exactly `p`.
pub fn factor_poly(p: &RatPoly) -> Result<Vec<(RatPoly, usize)>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Yun's algorithm. Input must be monic; returns `(f_i, i)` with `f_i`
/// squarefree, pairwise coprime, nonconstant, and `p = Π f_i^i`.
pub fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Irreducible monic factors of a squarefree monic rational polynomial.
fn factor_squarefree(p: &RatPoly) -> Vec<RatPoly> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![p.monic()];
    }
    let f = primitive_integer(p);
    let lc = f[deg].clone();
    let g = monic_transform(&f);
    factor_monic_integer(&g)
        .into_iter()
        .map(|h| {
            // undo y = lc·x, then drop the content
            let scaled: Vec<BigInt> = h
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect();
            integer_to_monic_rational(&scaled)
        })
        .collect()
}

/// Clears denominators and content; the leading coefficient is positive.
fn primitive_integer(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in v.iter_mut() {
        *c /= &content;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -c.clone();
        }
    }
    v
}

/// `c^(d-1) · F(y / c)` where `c` is the leading coefficient: a monic
/// integer polynomial whose factors map back to those of `F`.
fn monic_transform(f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len() - 1;
    let c = &f[d];
    let mut g: Vec<BigInt> = (0..d).map(|i| &f[i] * c.pow((d - 1 - i) as u32)).collect();
    g.push(BigInt::one());
    g
}

fn integer_to_monic_rational(v: &[BigInt]) -> RatPoly {
    RatPoly::new(v.iter().map(|c| Rational::from_integer(c.clone())).collect()).monic()
}

fn factor_monic_integer(g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let deg = g.len() - 1;
    if deg <= 1 {
        return vec![g.to_vec()];
    }
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES {
        let gp = reduce_mod(g, p);
        if degree(&gp) != Some(deg) {
            continue;
        }
        let dg = derivative_mod(&gp, p);
        if degree(&gcd_mod(&gp, &dg, p)) != Some(0) {
            continue;
        }
        let factors = factor_mod_p(&gp, p);
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried == PRIME_TRIALS {
            break;
        }
    }
    let (p, factors) = best.expect("no admissible prime for a squarefree polynomial");
    if factors.len() == 1 {
        return vec![g.to_vec()];
    }

    let bound = coefficient_bound(g);
    let mut k = 1u32;
    let mut modulus = BigInt::from(p);
    while modulus <= &bound * 2 {
        modulus *= p;
        k += 1;
    }
    let lifted = hensel_lift_all(g, factors, p, k, &modulus);
    recombine(g, lifted, &modulus)
}

/// Mignotte-style bound on the coefficients of any monic factor.
fn coefficient_bound(g: &[BigInt]) -> BigInt {
    let norm2: BigInt = g.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + 1;
    root << (g.len() - 1)
}

fn recombine(g: &[BigInt], lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining = lifted;
    let mut current = g.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &subset {
                cand = mul_mod_big(&cand, &remaining[i], modulus);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, modulus)).collect();
            if let Some(q) = exact_div_monic(&current, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                current = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn symmetric(c: &BigInt, modulus: &BigInt) -> BigInt {
    let r = c.mod_floor(modulus);
    if &r * 2 > *modulus {
        r - modulus
    } else {
        r
    }
}

/// Exact quotient of monic integer polynomials, or `None` if not divisible.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db > da {
        return None;
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    rem[..db].iter().all(Zero::is_zero).then_some(q)
}

fn mul_mod_big(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn hensel_lift_all(
    g: &[BigInt],
    factors: Vec<Vec<u64>>,
    p: u64,
    k: u32,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![g.iter().map(|c| c.mod_floor(modulus)).collect()];
    }
    let half = factors.len() / 2;
    let (left, right) = (factors[..half].to_vec(), factors[half..].to_vec());
    let u0 = left.iter().fold(vec![1u64], |acc, f| mul_mod(&acc, f, p));
    let w0 = right.iter().fold(vec![1u64], |acc, f| mul_mod(&acc, f, p));
    let (u, w) = hensel_two(g, &u0, &w0, p, k, modulus);
    let mut out = hensel_lift_all(&u, left, p, k, modulus);
    out.extend(hensel_lift_all(&w, right, p, k, modulus));
    out
}

/// Lifts `g ≡ u0·w0 (mod p)` with monic coprime `u0, w0` to a factorization
/// modulo `p^k`, one power of `p` at a time.
fn hensel_two(
    g: &[BigInt],
    u0: &[u64],
    w0: &[u64],
    p: u64,
    k: u32,
    modulus: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = ext_gcd_mod(u0, w0, p);
    let big_p = BigInt::from(p);
    let mut u: Vec<BigInt> = u0.iter().map(|&c| BigInt::from(c)).collect();
    let mut w: Vec<BigInt> = w0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pk = big_p.clone();
    for _ in 1..k {
        let next = &pk * &big_p;
        let uw = mul_mod_big(&u, &w, &next);
        let err: Vec<u64> = (0..g.len())
            .map(|i| {
                let e = (&g[i] - uw.get(i).cloned().unwrap_or_default()).mod_floor(&next);
                (e / &pk).to_u64().expect("residue fits in u64")
            })
            .collect();
        let err = trim(err);
        let sig = mul_mod(&s, &err, p);
        let tau = mul_mod(&t, &err, p);
        let (q, sigma) = div_rem_mod(&sig, w0, p);
        let tau = add_mod(&tau, &mul_mod(&q, u0, p), p);
        for (i, c) in tau.iter().enumerate() {
            u[i] += &pk * c;
        }
        for (i, c) in sigma.iter().enumerate() {
            w[i] += &pk * c;
        }
        pk = next;
    }
    let reduce = |v: Vec<BigInt>| v.into_iter().map(|c| c.mod_floor(modulus)).collect();
    (reduce(u), reduce(w))
}

// ---- polynomials over F_p as coefficient vectors, lowest degree first ----

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn degree(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn reduce_mod(g: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    trim(
        g.iter()
            .map(|c| c.mod_floor(&bp).to_u64().expect("small residue"))
            .collect(),
    )
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn add_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn sub_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn scale_mod(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| x * s % p).collect())
}

fn div_rem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial mod p");
    let Some(da) = degree(a) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    let mut q = vec![0u64; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * bc % p) % p;
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

fn monic_mod(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        Some(&lc) => scale_mod(a, inv_mod(lc, p), p),
        None => Vec::new(),
    }
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = div_rem_mod(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic_mod(&a, p)
}

/// `(s, t)` with `s·a + t·b = 1 (mod p)` for coprime `a`, `b`.
fn ext_gcd_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem_mod(&r0, &r1, p);
        let s2 = sub_mod(&s0, &mul_mod(&q, &s1, p), p);
        let t2 = sub_mod(&t0, &mul_mod(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().expect("coprime inputs"), p);
    (scale_mod(&s0, inv, p), scale_mod(&t0, inv, p))
}

fn derivative_mod(a: &[u64], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn pow_poly_mod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let base = div_rem_mod(base, modulus, p).1;
    for i in (0..exp.bits()).rev() {
        result = div_rem_mod(&mul_mod(&result, &result, p), modulus, p).1;
        if exp.bit(i) {
            result = div_rem_mod(&mul_mod(&result, &base, p), modulus, p).1;
        }
    }
    result
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p, p odd.
fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = SplitMix64::seed_from_u64(0x7464_725f_6661_6374 ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let exp = BigUint::from(p);
    let mut d = 0;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_poly_mod(&h, &exp, &rest, p);
        let g = gcd_mod(&rest, &sub_mod(&h, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            rest = div_rem_mod(&rest, &g, p).0;
            h = div_rem_mod(&h, &rest, p).1;
            out.push((g, d));
        }
    }
    if degree(&rest).unwrap_or(0) > 0 {
        let dr = degree(&rest).unwrap();
        out.push((rest, dr));
    }
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut SplitMix64, out: &mut Vec<Vec<u64>>) {
    let n = degree(g).unwrap_or(0);
    if n == d {
        out.push(monic_mod(g, p));
        return;
    }
    let exp: BigUint = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = trim((0..n).map(|_| rng.next_u64() % p).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub_mod(&pow_poly_mod(&a, &exp, g, p), &[1], p);
        let h = gcd_mod(g, &b, p);
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let other = div_rem_mod(g, &h, p).0;
            equal_degree(&h, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;
    use proptest::prelude::*;

    fn multiply_back(factors: &[(RatPoly, usize)], lc: Rational) -> RatPoly {
        factors
            .iter()
            .fold(RatPoly::constant(lc), |acc, (f, m)| &acc * &f.pow(*m))
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_poly(&RatPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(
            f,
            vec![
                (RatPoly::from_i64(&[-1, 1]), 1),
                (RatPoly::from_i64(&[1, 1]), 1)
            ]
        );
    }

    #[test]
    fn sum_of_squares_is_irreducible() {
        let f = factor_poly(&RatPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(RatPoly::from_i64(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factor_poly(&RatPoly::zero()), Err(AlgError::ZeroPolynomial));
        assert!(factor_poly(&RatPoly::constant(rat(3))).unwrap().is_empty());
    }

    #[test]
    fn swinnerton_dyer_like_quartic() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let p = RatPoly::from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_poly(&p).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn non_monic_with_repeated_factors() {
        // 6 (x - 1/2)^2 (x^2 + x + 1) (x + 3)
        let a = RatPoly::new(vec![crate::exactalg::rational::ratio(-1, 2), rat(1)]);
        let b = RatPoly::from_i64(&[1, 1, 1]);
        let c = RatPoly::from_i64(&[3, 1]);
        let p = (&(&a.pow(2) * &b) * &c).scale(&rat(6));
        let f = factor_poly(&p).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(multiply_back(&f, rat(6)), p);
        assert!(f.contains(&(a, 2)));
        assert!(f.contains(&(b, 1)));
    }

    #[test]
    fn degree_sixteen() {
        // (x^4 + 1)(x^4 - 2)(x^3 - 5)(x^2 + x + 7)(x^2 - 3)(x - 4)
        let parts = [
            RatPoly::from_i64(&[1, 0, 0, 0, 1]),
            RatPoly::from_i64(&[-2, 0, 0, 0, 1]),
            RatPoly::from_i64(&[-5, 0, 0, 1]),
            RatPoly::from_i64(&[7, 1, 1]),
            RatPoly::from_i64(&[-3, 0, 1]),
            RatPoly::from_i64(&[-4, 1]),
        ];
        let p = parts.iter().fold(RatPoly::one(), |acc, f| &acc * f);
        let f = factor_poly(&p).unwrap();
        assert_eq!(f.len(), parts.len());
        for part in &parts {
            assert!(f.contains(&(part.clone(), 1)), "missing {part}");
        }
    }

    fn irreducible_pool() -> Vec<RatPoly> {
        vec![
            RatPoly::from_i64(&[-1, 1]),
            RatPoly::from_i64(&[2, 1]),
            RatPoly::from_i64(&[0, 1]),
            RatPoly::from_i64(&[1, 0, 1]),
            RatPoly::from_i64(&[-2, 0, 1]),
            RatPoly::from_i64(&[1, 1, 1]),
            RatPoly::from_i64(&[-2, 0, 0, 1]),
            RatPoly::from_i64(&[1, -1, 0, 1]),
        ]
    }

    proptest! {
        #[test]
        fn recovers_random_products(choice in proptest::collection::vec((0usize..8, 1usize..3), 1..4)) {
            let pool = irreducible_pool();
            let mut expected: Vec<(RatPoly, usize)> = Vec::new();
            for (i, m) in choice {
                match expected.iter_mut().find(|(f, _)| *f == pool[i]) {
                    Some(entry) => entry.1 += m,
                    None => expected.push((pool[i].clone(), m)),
                }
            }
            let p = multiply_back(&expected, rat(-3));
            let got = factor_poly(&p).unwrap();
            prop_assert_eq!(multiply_back(&got, rat(-3)), p);
            expected.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
            prop_assert_eq!(got, expected);
        }
    }
}
