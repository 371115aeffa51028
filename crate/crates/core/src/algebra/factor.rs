//! Factorization of rational polynomials and binary forms into irreducibles
//! over the rationals: squarefree decomposition, then Zassenhaus (modular
//! factorization, Hensel lifting, factor recombination) on each part.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::form::BinaryForm;
use super::poly::Poly;
use super::zp::{Zp, ZpPoly};
use crate::error::{Error, Result};

/// Largest squarefree degree accepted by the factorizer.
pub const FACTOR_DEGREE_CEILING: usize = 40;

type QPoly = Poly<BigRational>;
type ZPoly = Vec<BigInt>;

/// Irreducible monic factors with multiplicities, sorted by degree and then
/// coefficients. The product of `factor^multiplicity` equals `f` up to a
/// nonzero constant.
pub fn factor_poly(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let n = part.deg() as usize;
        if n > FACTOR_DEGREE_CEILING {
            return Err(Error::FactorCeiling {
                degree: n,
                ceiling: FACTOR_DEGREE_CEILING,
            });
        }
        for g in factor_squarefree_integer(primitive_integer(&part)) {
            out.push((to_monic_q(&g), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// The same for a binary form; the factor `y` (the point `(1:0)`) is split
/// off first and every factor is made monic in the form sense.
pub fn factor_form(f: &BinaryForm<BigRational>) -> Result<Vec<(BinaryForm<BigRational>, usize)>> {
    let Some(k) = f.y_order() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut out: Vec<_> = factor_poly(&f.to_affine())?
        .into_iter()
        .map(|(p, m)| {
            let deg = p.deg() as usize;
            (BinaryForm::from_affine(&p, deg).monic(), m)
        })
        .collect();
    if k > 0 {
        out.push((BinaryForm::y(), k));
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// Monic gcd of rational polynomials by the primitive remainder sequence
/// over the integers, which keeps coefficient growth far below that of
/// Euclid over the rationals.
pub fn qpoly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut a, mut b) = (primitive_integer(a), primitive_integer(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = zprem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { make_primitive(r) };
    }
    if b.len() == 1 {
        return Poly::one();
    }
    to_monic_q(&a)
}

/// Squarefree part, monic, using [`qpoly_gcd`].
pub fn qpoly_squarefree(f: &QPoly) -> QPoly {
    if f.is_constant() {
        return f.monic();
    }
    let g = qpoly_gcd(f, &f.derivative());
    f.exact_div(&g).expect("gcd divides").monic()
}

/// `lc(b)^(deg a − deg b + 1) · a mod b` over the integers, trimmed.
fn zprem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_integer(p: &QPoly) -> ZPoly {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: ZPoly = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    make_primitive(ints)
}

fn make_primitive(v: ZPoly) -> ZPoly {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return v;
    }
    let sign = if v.last().is_some_and(|l| l.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    v.into_iter().map(|c| c / &content * &sign).collect()
}

fn to_q(v: &ZPoly) -> QPoly {
    Poly::new(v.iter().cloned().map(BigRational::from_integer).collect())
}

fn to_monic_q(v: &ZPoly) -> QPoly {
    to_q(v).monic()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

fn reduce_p(v: &ZPoly, z: Zp) -> ZpPoly {
    let p = BigInt::from(z.p);
    z.trim(v.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
}

fn from_zp(v: &ZpPoly) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn symmetric_mod(v: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = v
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mod_all(v: &ZPoly, m: &BigInt) -> ZPoly {
    v.iter().map(|c| c.mod_floor(m)).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (11u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Upper bound on the coefficients of any integer factor of `f`.
fn mignotte_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let max = f.iter().map(|c| c.abs()).max().unwrap_or_default();
    (BigInt::one() << n) * BigInt::from(n + 1) * max
}

/// Factors a primitive squarefree integer polynomial of positive degree.
fn factor_squarefree_integer(f: ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Pick the candidate prime with the fewest modular factors.
    let mut best: Option<(Zp, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let z = Zp::new(p);
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_p(&f, z);
        if !z.is_squarefree(&fp) {
            continue;
        }
        let facs = z.factor_squarefree(&fp, &mut rng);
        if facs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((z, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (z, modular) = best.expect("a good prime exists");

    let bound = BigInt::from(2) * lc.abs() * mignotte_bound(&f);
    let p = BigInt::from(z.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifted = hensel_lift_all(&f, &modular, z, k, &pk);
    recombine(f, lifted, &pk)
}

/// Lifts `f ≡ lc · Π g_i (mod p)` to monic factors modulo `p^k`.
fn hensel_lift_all(f: &ZPoly, factors: &[ZpPoly], z: Zp, k: u32, pk: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(pk).expect("leading coefficient is a unit");
        return vec![mod_all(&f.iter().map(|c| c * &inv).collect(), pk)];
    }
    let lc_p = reduce_p(&vec![f.last().unwrap().clone()], z);
    let rest = factors[1..]
        .iter()
        .fold(lc_p, |acc, g| z.mul(&acc, g));
    let (g, h) = hensel_pair(f, &factors[0], &rest, z, k, pk);
    let mut out = vec![g];
    out.extend(hensel_lift_all(&h, &factors[1..], z, k, pk));
    out
}

/// Linear Hensel lifting of `f ≡ g·h (mod p)` with `g` monic.
fn hensel_pair(f: &ZPoly, g: &ZpPoly, h: &ZpPoly, z: Zp, k: u32, pk: &BigInt) -> (ZPoly, ZPoly) {
    let (one, s, t) = z.ext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(z.p);
    let mut big_g = from_zp(g);
    let mut big_h = from_zp(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&big_g, &big_h));
        let e: ZPoly = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &pj).is_zero());
                c / &pj
            })
            .collect();
        let ep = reduce_p(&e, z);
        let (q, dg) = z.div_rem(&z.mul(&t, &ep), g);
        let dh = z.add(&z.mul(&s, &ep), &z.mul(&q, h));
        big_g = add_scaled(&big_g, &dg, &pj);
        big_h = add_scaled(&big_h, &dh, &pj);
        pj *= &p;
    }
    (mod_all(&big_g, pk), mod_all(&big_h, pk))
}

fn add_scaled(a: &ZPoly, d: &ZpPoly, scale: &BigInt) -> ZPoly {
    let n = a.len().max(d.len());
    (0..n)
        .map(|i| {
            let base = a.get(i).cloned().unwrap_or_default();
            match d.get(i) {
                Some(&c) if c != 0 => base + scale * BigInt::from(c),
                _ => base,
            }
        })
        .collect()
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut progress = false;
        for subset in Combinations::new(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| mod_all(&zmul(&acc, &lifted[i]), pk));
            let cand = make_primitive(symmetric_mod(&prod, pk));
            if cand.len() < 2 {
                continue;
            }
            if !f[0].is_zero() && !(&f[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = to_q(&f).exact_div(&to_q(&cand)) {
                found.push(cand);
                let q = primitive_integer(&q);
                f = q;
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                lifted = keep;
                progress = true;
                break;
            }
        }
        if !progress {
            size += 1;
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}

/// Lexicographic `size`-subsets of `0..n`.
struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    fn new(n: usize, size: usize) -> Self {
        Combinations {
            idx: (0..size).collect(),
            n,
            done: size > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Form;

    fn q(v: &[i64]) -> QPoly {
        Poly::from_i64s(v)
    }

    fn expand(fs: &[(QPoly, usize)]) -> QPoly {
        fs.iter().fold(Poly::one(), |acc, (p, m)| &acc * &p.pow(*m))
    }

    #[test]
    fn form_examples() {
        // x^2 - y^2
        let f = Form::from_i64s(&[1, 0, -1]);
        let fs = factor_form(&f).unwrap();
        assert_eq!(fs, vec![(Form::from_i64s(&[1, -1]), 1), (Form::from_i64s(&[1, 1]), 1)]);

        let cube = Form::from_i64s(&[1, -3, 3, -1]);
        assert_eq!(factor_form(&cube).unwrap(), vec![(Form::from_i64s(&[1, -1]), 3)]);

        let quartic = Form::from_i64s(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_form(&quartic).unwrap(), vec![(quartic.clone(), 1)]);
    }

    #[test]
    fn y_factor_split_off() {
        // x y^2 (x + 2y)
        let f = Form::from_i64s(&[0, 1, 2, 0]).mul(&Form::y());
        let fs = factor_form(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(Form::y(), 2)));
        assert!(fs.contains(&(Form::x(), 1)));
    }

    #[test]
    fn integer_gcd_matches_rational_gcd() {
        let a = &q(&[3, 0, 1]) * &q(&[-2, 5]);
        let b = &q(&[-2, 5]) * &q(&[1, 1, 0, 7]);
        assert_eq!(qpoly_gcd(&a, &b), q(&[-2, 5]).monic());
        assert_eq!(qpoly_gcd(&a, &b), Poly::gcd(&a, &b));
        assert_eq!(qpoly_gcd(&q(&[1, 1]), &q(&[2, 1])), Poly::one());
        let sq = &a * &a;
        assert_eq!(qpoly_squarefree(&sq), a.monic());
    }

    #[test]
    fn zero_is_an_error() {
        assert!(factor_poly(&QPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits into quadratics or
        // linears modulo every prime.
        let f = q(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_poly(&f).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn product_of_known_factors() {
        let parts = [q(&[3, 0, 1]), q(&[-2, 5]), q(&[1, 1, 0, 7]), q(&[7, -1, 0, 0, 0, 2])];
        let f = parts.iter().fold(Poly::one(), |acc, p| &acc * p);
        let f = &f * &q(&[-2, 5]);
        let fs = factor_poly(&f).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(expand(&fs), f.monic());
        assert!(fs.iter().any(|(p, m)| p == &q(&[-2, 5]).monic() && *m == 2));
    }
}
