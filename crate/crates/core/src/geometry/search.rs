use std::collections::BTreeMap;

use num_integer::{Integer, Roots};

use super::classify::{classify_line, CubicPointClass, PointClass};
use super::curves::DiagonalCubic;
use super::line::ProjLine;
use crate::error::{Error, Result};
use crate::par::Strategy;

const FILTER_PRIMES: usize = 32;

/// Parameters of a bounded line search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub height: u64,
    /// Optional inclusive bounds per coefficient, applied on top of the
    /// height bound.
    pub window: Option<[(i64, i64); 3]>,
    /// Also report lines whose points generate a non-Galois cubic field.
    pub include_nongalois: bool,
}

impl SearchOptions {
    pub fn new(height: u64) -> Self {
        SearchOptions { height, window: None, include_nongalois: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchSummary {
    pub lines: u64,
    pub counts: BTreeMap<PointClass, u64>,
}

impl SearchSummary {
    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> =
            PointClass::ALL.iter().map(|c| (c.name().to_string(), self.counts.get(c).copied().unwrap_or(0).into())).collect();
        serde_json::json!({"lines": self.lines, "counts": counts})
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub hits: Vec<(ProjLine, CubicPointClass)>,
    pub summary: SearchSummary,
}

/// Per-curve data for classifying many lines with machine integers.
pub struct FastClassifier {
    abc: [i128; 3],
    tables: Vec<(i64, Vec<u64>)>,
}

impl FastClassifier {
    fn new(abc: [i64; 3]) -> Self {
        let bad = 3 * abc[0].unsigned_abs() as u128 * abc[1].unsigned_abs() as u128 * abc[2].unsigned_abs() as u128;
        let tables = (5i64..)
            .filter(|&p| is_small_prime(p) && !bad.is_multiple_of(p as u128))
            .take(FILTER_PRIMES)
            .map(|p| (p, line_table(abc, p)))
            .collect();
        FastClassifier { abc: abc.map(i128::from), tables }
    }

    /// `T(r, s, t)` such that an intersection cubic in the chart of `t` has
    /// discriminant `-27 t^6 T`. Symmetric in the pairs `(a,r), (b,s), (c,t)`.
    fn sextic(&self, r: i64, s: i64, t: i64) -> Option<i128> {
        let [a, b, c] = self.abc;
        let (r3, s3, t3) = (cube(r)?, cube(s)?, cube(t)?);
        let sq = |x: i128| x.checked_mul(x);
        let pos = sq(b.checked_mul(c)?.checked_mul(r3)?)?
            .checked_add(sq(a.checked_mul(c)?.checked_mul(s3)?)?)?
            .checked_add(sq(a.checked_mul(b)?.checked_mul(t3)?)?)?;
        let mixed = c
            .checked_mul(r3.checked_mul(s3)?)?
            .checked_add(b.checked_mul(r3.checked_mul(t3)?)?)?
            .checked_add(a.checked_mul(s3.checked_mul(t3)?)?)?;
        pos.checked_sub(a.checked_mul(b)?.checked_mul(c)?.checked_mul(2)?.checked_mul(mixed)?)
    }

    fn may_have_rational_point(&self, r: i64, s: i64, t: i64) -> bool {
        self.tables.iter().all(|(p, table)| {
            let i = ((r.rem_euclid(*p) * p + s.rem_euclid(*p)) * p + t.rem_euclid(*p)) as usize;
            table[i / 64] >> (i % 64) & 1 == 1
        })
    }

    /// The class of a line, or `None` when it needs the exact path.
    fn tag(&self, r: i64, s: i64, t: i64) -> Option<PointClass> {
        let big_t = self.sextic(r, s, t)?;
        if big_t == 0 {
            return Some(PointClass::Degenerate);
        }
        if self.may_have_rational_point(r, s, t) {
            return None;
        }
        let m = big_t.checked_mul(-3)?;
        Some(if is_square_i128(m) { PointClass::CyclicCubic } else { PointClass::NonGalois })
    }
}

fn cube(x: i64) -> Option<i128> {
    let x = i128::from(x);
    x.checked_mul(x)?.checked_mul(x)
}

fn is_small_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

thread_local! {
    static SQUARES_63_65_11: Vec<bool> = {
        let mut t = vec![false; 63 + 65 + 11];
        for (offset, n) in [(0usize, 63u64), (63, 65), (128, 11)] {
            for x in 0..n {
                t[offset + (x * x % n) as usize] = true;
            }
        }
        t
    };
}

fn is_square_i128(m: i128) -> bool {
    if m < 0 {
        return false;
    }
    let m = m as u128;
    // bit k is set iff k is a square modulo 64
    if (0x0202_0212_0203_0213u64 >> (m % 64)) & 1 == 0 {
        return false;
    }
    let k = (m % 45045) as u64;
    if !SQUARES_63_65_11.with(|t| t[(k % 63) as usize] && t[63 + (k % 65) as usize] && t[128 + (k % 11) as usize]) {
        return false;
    }
    let r = m.sqrt();
    r * r == m
}

/// Bit `(r*p + s)*p + t` is set iff the line `(r,s,t)` mod `p` meets the
/// curve in a point of `P^2(F_p)`. The zero line counts as meeting.
fn line_table(abc: [i64; 3], p: i64) -> Vec<u64> {
    let n = (p * p * p) as usize;
    let mut table = vec![0u64; n.div_ceil(64)];
    table[0] |= 1;
    let red = abc.map(|x| x.rem_euclid(p));
    let mut points = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let first = [x, y, z].into_iter().find(|&v| v != 0);
                if first != Some(1) {
                    continue;
                }
                let v = (red[0] * x * x % p * x + red[1] * y * y % p * y + red[2] * z * z % p * z) % p;
                if v == 0 {
                    points.push([x, y, z]);
                }
            }
        }
    }
    for pt in points {
        // the last nonzero coordinate k: solve the line for its coefficient
        let k = (0..3).rev().find(|&i| pt[i] != 0).expect("nonzero point");
        let inv = mod_inverse(pt[k], p);
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for u in 0..p {
            for v in 0..p {
                let mut line = [0i64; 3];
                line[i] = u;
                line[j] = v;
                line[k] = (-(u * pt[i] + v * pt[j]) % p + p) % p * inv % p;
                let idx = ((line[0] * p + line[1]) * p + line[2]) as usize;
                table[idx / 64] |= 1 << (idx % 64);
            }
        }
    }
    table
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = a.extended_gcd(&p);
    e.x.rem_euclid(p)
}

fn range(h: i64, window: Option<(i64, i64)>, lo: i64) -> (i64, i64) {
    let (mut a, mut b) = (lo.max(-h), h);
    if let Some((wa, wb)) = window {
        a = a.max(wa);
        b = b.min(wb);
    }
    (a, b)
}

/// Classifies every canonical primitive line `(r, s, t)` with
/// `max |coefficient| <= height` (and inside the window, if given).
///
/// Lines in the `Rational`, `CyclicCubic` and `Degenerate` classes are
/// always returned with their exact witness; `NonGalois` lines only when
/// requested. Summary counts cover every enumerated line. The result is
/// sorted by line and independent of the strategy.
pub fn search_lines(curve: &DiagonalCubic, options: &SearchOptions, strategy: Strategy) -> Result<SearchResult> {
    if options.height == 0 {
        return Err(Error::InvalidLine("height must be at least 1".into()));
    }
    let h = i64::try_from(options.height).map_err(|_| Error::InvalidLine("height too large".into()))?;
    let abc = curve
        .small_coefficients()
        .ok_or_else(|| Error::InvalidLine("coefficients too large for the line search".into()))?;
    let fast = FastClassifier::new(abc);
    let w = options.window;
    let (r0, r1) = range(h, w.map(|w| w[0]), 0);
    let slabs: Vec<i64> = (r0..=r1).collect();
    let parts = strategy.map(&slabs, |&r| {
        let mut hits = Vec::new();
        let mut summary = SearchSummary::default();
        let (s0, s1) = range(h, w.map(|w| w[1]), if r == 0 { 0 } else { -h });
        for s in s0..=s1 {
            let g = r.gcd(&s);
            let lo = if r == 0 && s == 0 { 1 } else { -h };
            let (t0, t1) = range(h, w.map(|w| w[2]), lo);
            for t in t0..=t1 {
                if g.gcd(&t) != 1 {
                    continue;
                }
                let line = || ProjLine::from_ints(r, s, t).expect("nonzero");
                let (tag, witness) = match fast.tag(r, s, t) {
                    Some(PointClass::NonGalois) if !options.include_nongalois => (PointClass::NonGalois, None),
                    _ => {
                        let l = line();
                        let k = classify_line(curve, &l);
                        (k.tag, Some((l, k)))
                    }
                };
                summary.lines += 1;
                *summary.counts.entry(tag).or_insert(0) += 1;
                if let Some((l, k)) = witness {
                    if options.include_nongalois || tag != PointClass::NonGalois {
                        hits.push((l, k));
                    }
                }
            }
        }
        (hits, summary)
    });
    let mut hits = Vec::new();
    let mut summary = SearchSummary::default();
    for (h, s) in parts {
        hits.extend(h);
        summary.lines += s.lines;
        for (k, v) in s.counts {
            *summary.counts.entry(k).or_insert(0) += v;
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SearchResult { hits, summary })
}

/// Every canonical primitive line of height at most `height` with its class.
pub fn search_cubic_lines(curve: &DiagonalCubic, height: u64) -> Result<Vec<(ProjLine, CubicPointClass)>> {
    let options = SearchOptions { include_nongalois: true, ..SearchOptions::new(height) };
    Ok(search_lines(curve, &options, Strategy::Sequential)?.hits)
}

impl FastClassifier {
    pub fn for_curve(curve: &DiagonalCubic) -> Option<Self> {
        curve.small_coefficients().map(Self::new)
    }

    /// The class of a single line, or `None` when the exact path is needed.
    pub fn classify(&self, line: &ProjLine) -> Option<PointClass> {
        let [r, s, t] = line.coeffs().clone().map(|x| i64::try_from(x).ok());
        self.tag(r?, s?, t?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_test() {
        for m in 0..5000i128 {
            let r = (m as f64).sqrt().round() as i128;
            assert_eq!(is_square_i128(m), r * r == m, "{m}");
        }
        assert!(!is_square_i128(-4));
        assert!(is_square_i128(1i128 << 100));
    }

    #[test]
    fn line_count() {
        let c = DiagonalCubic::from_ints(1, 1, 1).unwrap();
        let all = search_cubic_lines(&c, 1).unwrap();
        assert_eq!(all.len(), 13);
        let l = ProjLine::from_ints(1, 0, 0).unwrap();
        assert!(all.iter().any(|(m, k)| m == &l && k.tag == PointClass::Rational));
    }
}
