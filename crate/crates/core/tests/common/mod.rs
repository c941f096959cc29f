//! Test-side oracles: small dense integer polynomials and direct closed forms,
//! sharing no code with the library.
#![allow(dead_code)]

use flipchain_core::exactpoly::LaurentPoly;
use num_traits::ToPrimitive;

/// Dense polynomial in t with nonnegative exponents, `c[k]` the t^k coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P(pub Vec<i128>);

impl P {
    pub fn new(mut c: Vec<i128>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        P(c)
    }

    pub fn one() -> Self {
        P(vec![1])
    }

    pub fn mono(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        P(c)
    }

    pub fn add(&self, o: &P) -> P {
        let n = self.0.len().max(o.0.len());
        P::new((0..n).map(|k| self.0.get(k).unwrap_or(&0) + o.0.get(k).unwrap_or(&0)).collect())
    }

    pub fn sub(&self, o: &P) -> P {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, s: i128) -> P {
        P::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &P) -> P {
        if self.0.is_empty() || o.0.is_empty() {
            return P(vec![]);
        }
        let mut c = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        P::new(c)
    }

    pub fn pow(&self, n: u32) -> P {
        (0..n).fold(P::one(), |acc, _| acc.mul(self))
    }

    /// Schoolbook division from the top; `None` on a nonzero remainder.
    pub fn div(&self, den: &P) -> Option<P> {
        let mut rem = self.0.clone();
        let dl = den.0.len();
        let lead = *den.0.last()?;
        if rem.len() < dl {
            return rem.iter().all(|&c| c == 0).then(|| P(vec![]));
        }
        let mut q = vec![0; rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dl - 1];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[k] = f;
            for (j, c) in den.0.iter().enumerate() {
                rem[k + j] -= f * c;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| P::new(q))
    }

    pub fn of(lp: &LaurentPoly) -> P {
        if lp.is_zero() {
            return P(vec![]);
        }
        assert!(lp.min_exponent().unwrap() >= 0, "negative exponent in {lp}");
        let top = lp.max_exponent().unwrap();
        P::new((0..=top).map(|e| lp.coeff(e).to_i128().unwrap()).collect())
    }
}

pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, j| acc * (n - j) as i128 / (j + 1) as i128)
}

/// `1 + t² + … + t^{2n}`; zero for n < 0.
pub fn proj(n: i64) -> P {
    if n < 0 {
        return P(vec![]);
    }
    P::new((0..=2 * n as usize).map(|k| if k % 2 == 0 { 1 } else { 0 }).collect())
}

pub fn jac(g: i64) -> P {
    P::new((0..=2 * g).map(|k| binom(2 * g, k)).collect())
}

/// `Σ_a C(2g, a) t^a (1 + t² + … + t^{2(n−a)})`
pub fn sym(n: i64, g: i64) -> P {
    (0..=n.min(2 * g)).fold(P(vec![]), |acc, a| {
        acc.add(&P::mono(a as usize).mul(&proj(n - a)).scale(binom(2 * g, a)))
    })
}

pub fn terminal(d: i64, g: i64) -> P {
    jac(g).mul(&proj(-d + g - 2))
}

pub fn flip_locus(j: i64, d: i64, g: i64, minus: bool) -> P {
    let rank = if minus { d + g + 2 * j + 1 } else { -d - j - 1 };
    jac(g).mul(&sym(-d - j - 1, g)).mul(&proj(rank - 1))
}

/// Walk back from the terminal chamber, undoing one flip per wall.
pub fn fm(i: i64, d: i64, g: i64) -> P {
    ((i)..=(-d - 2)).fold(terminal(d, g), |acc, j| {
        acc.add(&flip_locus(j, d, g, true)).sub(&flip_locus(j, d, g, false))
    })
}

pub fn u2d_numerator(g: i64) -> P {
    let cubes = P::new(vec![1, 0, 0, 1]).pow(2 * g as u32);
    let corr = P::mono(2 * g as usize).mul(&jac(g));
    cubes.sub(&corr)
}

pub fn u2d(g: i64) -> P {
    let den = P::new(vec![1, 0, -1]).mul(&P::new(vec![1, 0, 0, 0, -1]));
    jac(g).mul(&u2d_numerator(g).div(&den).expect("exact"))
}

pub fn mcon(g: i64) -> P {
    let den = P::new(vec![1, 0, -1]).pow(2);
    jac(g).mul(&u2d_numerator(g).div(&den).expect("exact"))
}

pub fn first_index(d: i64) -> i64 {
    // ⌊−d/2 − 1⌋ + 1, written out with floating-free floor
    let x = -d - 2;
    let fl = if x >= 0 { x / 2 } else { -((-x + 1) / 2) };
    fl + 1
}
