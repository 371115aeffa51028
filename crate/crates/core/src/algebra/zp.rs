//! Dense polynomials over `Z/pZ` for a runtime word-sized prime, with
//! distinct-degree and equal-degree factorization.

use rand::Rng;

/// Ascending coefficients, each reduced into `0..p`, no trailing zeros.
pub type ZpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "odd prime below 2^31 expected");
        Zp { p }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.powm(a, self.p - 2)
    }

    pub fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn trim(&self, mut a: ZpPoly) -> ZpPoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(out)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulm(x, y)) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> ZpPoly {
        self.trim(a.iter().map(|&x| self.mulm(x, c)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> ZpPoly {
        match a.last() {
            Some(&l) => self.scale(a, self.inv(l)),
            None => Vec::new(),
        }
    }

    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), self.trim(r));
        }
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mulm(r[k + b.len() - 1], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - self.mulm(c, bj)) % self.p;
                }
            }
        }
        r.truncate(b.len() - 1);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly, ZpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = self.inv(*r0.last().expect("gcd of zeros"));
        (self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l))
    }

    pub fn derivative(&self, a: &[u64]) -> ZpPoly {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
                .collect(),
        )
    }

    /// `base^e mod m`
    pub fn pow_mod(&self, base: &[u64], mut e: u128, m: &[u64]) -> ZpPoly {
        let mut acc = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Splits a monic squarefree polynomial into its monic irreducible
    /// factors, sorted by degree then coefficients.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<ZpPoly> {
        let f = self.monic(f);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(ZpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut i = 0;
        while rest.len() > 1 {
            i += 1;
            if 2 * i > rest.len() - 1 {
                let d = rest.len() - 1;
                out.push((rest, d));
                break;
            }
            h = self.pow_mod(&h, self.p as u128, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, i));
            }
        }
        out
    }

    fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R, out: &mut Vec<ZpPoly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        let e = (u128::from(self.p).pow(d as u32) - 1) / 2;
        loop {
            let a: ZpPoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, e, f), &[1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }
}
