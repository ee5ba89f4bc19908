//! Recognition of floating-point values as two-term quadratic surds
//! `(a*sqrt(p) + b*sqrt(q))/c` with small integers, the closing step of the
//! search procedure: once a climb converges, the matrix entries and the
//! objective value are matched against exact constants.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

/// A canonical two-term surd `(a*sqrt(p) + b*sqrt(q))/c`.
///
/// Canonical means: `p` and `q` are square-free, `p <= q`, a zero coefficient
/// carries radicand 1, a rational value sits entirely in the `a` term, and
/// `gcd(|a|, |b|, c) = 1` with `c >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurdForm {
    pub a: i64,
    pub p: u64,
    pub b: i64,
    pub q: u64,
    pub c: u64,
}

impl SurdForm {
    /// Build the canonical form of `(a*sqrt(p) + b*sqrt(q))/c`.
    ///
    /// Radicands need not be square-free on input; square factors migrate
    /// into the coefficients.
    pub fn new(a: i64, p: u64, b: i64, q: u64, c: u64) -> Self {
        assert!(
            c > 0 && p > 0 && q > 0,
            "radicands and denominator must be positive"
        );
        let (fa, pa) = extract_square(p);
        let (fb, qb) = extract_square(q);
        let mut a = a * fa as i64;
        let mut p = pa;
        let mut b = b * fb as i64;
        let mut q = qb;
        if p == q {
            a += b;
            b = 0;
        }
        if a == 0 {
            p = 1;
        }
        if b == 0 {
            q = 1;
        }
        // Again: merging may have produced a zero, and both-rational inputs
        // collapse to a single term.
        if p == q {
            a += b;
            b = 0;
            q = 1;
        }
        if p > q {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut p, &mut q);
        }
        // The rational (or zero) term sits in the `a` slot with radicand 1.
        let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), c);
        let g = g.max(1);
        Self {
            a: a / g as i64,
            p,
            b: b / g as i64,
            q,
            c: c / g,
        }
    }

    /// Binary64 evaluation of the closed form.
    pub fn value(&self) -> f64 {
        (self.a as f64 * (self.p as f64).sqrt() + self.b as f64 * (self.q as f64).sqrt())
            / self.c as f64
    }

    fn complexity(&self) -> (u64, u64, u64, u64, i64, i64) {
        (
            self.c,
            self.a.unsigned_abs() + self.b.unsigned_abs(),
            self.p,
            self.q,
            self.a,
            self.b,
        )
    }
}

impl fmt::Display for SurdForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(coeff: i64, rad: u64) -> String {
            match (coeff, rad) {
                (c, 1) => format!("{c}"),
                (1, r) => format!("sqrt({r})"),
                (-1, r) => format!("-sqrt({r})"),
                (c, r) => format!("{c}*sqrt({r})"),
            }
        }
        let numerator = match (self.a, self.b) {
            (0, 0) => "0".to_string(),
            (a, 0) => term(a, self.p),
            (0, b) => term(b, self.q),
            (a, b) => {
                let rhs = term(b, self.q);
                if rhs.starts_with('-') {
                    format!("{}{}", term(a, self.p), rhs)
                } else {
                    format!("{}+{}", term(a, self.p), rhs)
                }
            }
        };
        if self.c == 1 {
            write!(f, "{numerator}")
        } else if self.a != 0 && self.b != 0 {
            write!(f, "({numerator})/{}", self.c)
        } else {
            write!(f, "{numerator}/{}", self.c)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Split `k = f^2 * m` with `m` square-free; returns `(f, m)`.
fn extract_square(k: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut m = k;
    let mut d = 2u64;
    while d * d <= m {
        while m.is_multiple_of(d * d) {
            m /= d * d;
            f *= d;
        }
        d += 1;
    }
    (f, m)
}

/// Search-space parameters for [`SurdRecognizer`].
#[derive(Debug, Clone)]
pub struct RecognizerParams {
    /// Bound on |a|, |b| and the pre-rationalization denominator.
    pub max_int: i64,
    /// Square-free radicands admitted under the roots.
    pub radicands: Vec<u64>,
    /// Absolute matching tolerance.
    pub tol: f64,
}

impl Default for RecognizerParams {
    fn default() -> Self {
        Self {
            max_int: 12,
            radicands: vec![1, 2, 3, 5, 6, 7, 29],
            tol: 1e-6,
        }
    }
}

/// Precomputed table of candidate surds, sorted by value for window lookup.
pub struct SurdRecognizer {
    params: RecognizerParams,
    table: Vec<(f64, SurdForm)>,
}

impl SurdRecognizer {
    /// Enumerate `(a*sqrt(p) + b*sqrt(q)) / (c*sqrt(s))` over the parameter
    /// box and store each candidate in rationalized canonical form. The
    /// `sqrt(s)` denominators are what admit entries like `3/sqrt(29)`, whose
    /// canonical form `3*sqrt(29)/29` has a denominator beyond `max_int`.
    pub fn new(params: RecognizerParams) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut table = Vec::new();
        let radicands = &params.radicands;
        let max = params.max_int;
        for &s in radicands {
            for (pi, &p) in radicands.iter().enumerate() {
                for &q in &radicands[pi..] {
                    for a in -max..=max {
                        for b in -max..=max {
                            // (a sqrt(p) + b sqrt(q)) duplicates collapse in
                            // canonical form; skip the worst offenders early.
                            if p == q && b != 0 {
                                continue;
                            }
                            if b == 0 && q != p {
                                continue;
                            }
                            for c in 1..=max as u64 {
                                let form = SurdForm::new(a, p * s, b, q * s, c * s);
                                if seen.insert(form) {
                                    table.push((form.value(), form));
                                }
                            }
                        }
                    }
                }
            }
        }
        table.sort_by(|x, y| x.0.total_cmp(&y.0));
        Self { params, table }
    }

    /// Number of distinct candidate forms in the table.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// All candidate forms with their values, ascending by value.
    pub fn forms(&self) -> impl Iterator<Item = (f64, SurdForm)> + '_ {
        self.table.iter().copied()
    }

    /// Match `value` against the table, returning the candidate within
    /// tolerance that minimizes `(c, |a|+|b|)` lexicographically.
    pub fn recognize(&self, value: f64) -> Option<SurdForm> {
        if !value.is_finite() {
            return None;
        }
        let lo = self
            .table
            .partition_point(|&(v, _)| v < value - self.params.tol);
        self.table[lo..]
            .iter()
            .take_while(|&&(v, _)| v <= value + self.params.tol)
            .map(|&(_, form)| form)
            .min_by_key(SurdForm::complexity)
    }
}

/// Recognize with the default parameter box (|a|,|b|,c <= 12, radicands
/// {1,2,3,5,6,7,29}, tolerance 1e-6). The table builds once per process.
pub fn recognize_surd(value: f64) -> Option<SurdForm> {
    static DEFAULT: OnceLock<SurdRecognizer> = OnceLock::new();
    DEFAULT
        .get_or_init(|| SurdRecognizer::new(RecognizerParams::default()))
        .recognize(value)
}
