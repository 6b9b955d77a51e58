//! Closed-form leaf functions, their difference functions, bounding lines,
//! and the saturation predicate.

use crate::error::LeafFnError;
use crate::lattice::LatticeKind;
use crate::polyform::Polyform;

/// Maximum leaf count of a tree-like polyform of size `n` on lattice `kind`.
///
/// Square: 2; n-1 for n in 3..=5; ell(n-4)+2 afterwards.
/// Hex/Tri: floor(n/2)+1.
/// Cubic: the piecewise f_cub table for n <= 40 plus +1 bumps at
/// {6,7,13,19,25}, then period 41 with increment 28.
pub fn ell(kind: LatticeKind, n: i64) -> Result<i64, LeafFnError> {
    if n < 2 {
        return Err(LeafFnError::DomainTooSmall(n));
    }
    Ok(match kind {
        LatticeKind::Square => ell_square(n),
        LatticeKind::Hex | LatticeKind::Tri => n / 2 + 1,
        LatticeKind::Cubic => ell_cubic(n),
    })
}

fn ell_square(n: i64) -> i64 {
    // n = 4q + s with s in {2,3,4,5}.
    let q = (n - 2) / 4;
    let s = n - 4 * q;
    let base = match s {
        2 => 2,
        3 => 2,
        4 => 3,
        5 => 4,
        _ => unreachable!(),
    };
    base + 2 * q
}

fn f_cub(n: i64) -> i64 {
    debug_assert!((0..=40).contains(&n));
    if n <= 11 {
        (2 * n + 2) / 3
    } else if n <= 27 {
        (2 * n + 3) / 3
    } else {
        (2 * n + 4) / 3
    }
}

const CUBIC_BUMPS: [i64; 5] = [6, 7, 13, 19, 25];

fn ell_cubic(n: i64) -> i64 {
    if n <= 40 {
        f_cub(n) + i64::from(CUBIC_BUMPS.contains(&n))
    } else if n <= 81 {
        f_cub(n - 41) + 28
    } else {
        // Reduce into [41, 81] and add 28 per period of 41.
        let k = (n - 41) / 41;
        ell_cubic(n - 41 * k) + 28 * k
    }
}

/// Period of the eventually-periodic difference sequence of `ell`.
pub fn period(kind: LatticeKind) -> i64 {
    match kind {
        LatticeKind::Square => 4,
        LatticeKind::Hex | LatticeKind::Tri => 2,
        LatticeKind::Cubic => 41,
    }
}

/// First index past all transients of `ell`'s difference sequence.
fn transient_end(kind: LatticeKind) -> i64 {
    match kind {
        LatticeKind::Square => 6,
        LatticeKind::Hex | LatticeKind::Tri => 4,
        LatticeKind::Cubic => 82,
    }
}

/// liminf of ell(n+i) - ell(n): the minimum over one full period of the
/// difference sequence past its transients.
pub fn delta_ell(kind: LatticeKind, i: i64) -> Result<i64, LeafFnError> {
    if i < 1 {
        return Err(LeafFnError::DomainTooSmall(i));
    }
    let n0 = transient_end(kind);
    let p = period(kind);
    (n0..n0 + p)
        .map(|n| Ok(ell(kind, n + i)? - ell(kind, n)?))
        .collect::<Result<Vec<i64>, _>>()
        .map(|v| v.into_iter().min().expect("period >= 1"))
}

/// A line (a * n + b) / den with exact integer comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundLine {
    pub slope_num: i64,
    pub intercept_num: i64,
    pub den: i64,
}

impl BoundLine {
    /// Exact comparison: value <= line(n).
    pub fn at_least(&self, n: i64, value: i64) -> bool {
        value * self.den >= self.slope_num * n + self.intercept_num
    }

    pub fn at_most(&self, n: i64, value: i64) -> bool {
        value * self.den <= self.slope_num * n + self.intercept_num
    }

    /// Reduced-fraction rendering of the value at `n`.
    pub fn display_at(&self, n: i64) -> String {
        let num = self.slope_num * n + self.intercept_num;
        let g = gcd(num.abs().max(1), self.den);
        let (num, den) = (num / g, self.den / g);
        if den == 1 {
            format!("{num}")
        } else {
            format!("{num}/{den}")
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parallel upper and lower bounding lines of the leaf function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafBounds {
    pub upper: BoundLine,
    pub lower: BoundLine,
}

/// The unique pair of parallel lines enclosing `ell`, each touched
/// infinitely often: square (n+3)/2 and (n+1)/2; hex = tri (n+2)/2 and
/// (n+1)/2; cubic (28n+36)/41 and (28n-6)/41.
pub fn bounds(kind: LatticeKind) -> LeafBounds {
    match kind {
        LatticeKind::Square => LeafBounds {
            upper: BoundLine { slope_num: 1, intercept_num: 3, den: 2 },
            lower: BoundLine { slope_num: 1, intercept_num: 1, den: 2 },
        },
        LatticeKind::Hex | LatticeKind::Tri => LeafBounds {
            upper: BoundLine { slope_num: 1, intercept_num: 2, den: 2 },
            lower: BoundLine { slope_num: 1, intercept_num: 1, den: 2 },
        },
        LatticeKind::Cubic => LeafBounds {
            upper: BoundLine { slope_num: 28, intercept_num: 36, den: 41 },
            lower: BoundLine { slope_num: 28, intercept_num: -6, den: 41 },
        },
    }
}

/// Fully leafed and touching the upper bounding line.
///
/// Both conditions are required: leaf count equals `ell(n)` and the count is
/// at least the upper line at `n` (exact rational comparison).
pub fn is_saturated(p: &Polyform) -> Result<bool, LeafFnError> {
    if !p.is_tree() {
        return Err(LeafFnError::NotATree);
    }
    let n = p.len() as i64;
    let leaves = p.leaf_count() as i64;
    if n < 2 {
        return Ok(false);
    }
    let full = ell(p.kind(), n)? == leaves;
    Ok(full && bounds(p.kind()).upper.at_least(n, leaves))
}

/// Sizes at which saturated polyforms exist, for quick membership checks.
pub fn saturated_size(kind: LatticeKind, n: i64) -> bool {
    if n < 2 {
        return false;
    }
    match ell(kind, n) {
        Ok(l) => bounds(kind).upper.at_least(n, l),
        Err(_) => false,
    }
}

/// Direct memoized transcription of the recursive definitions, used as the
/// independent oracle for `ell` in tests.
pub mod reference {
    use crate::lattice::LatticeKind;
    use std::collections::HashMap;

    pub fn ell_recursive(kind: LatticeKind, n: i64) -> i64 {
        let mut memo = HashMap::new();
        go(kind, n, &mut memo)
    }

    fn go(kind: LatticeKind, n: i64, memo: &mut HashMap<i64, i64>) -> i64 {
        if let Some(&v) = memo.get(&n) {
            return v;
        }
        let v = match kind {
            LatticeKind::Square => match n {
                2 => 2,
                3..=5 => n - 1,
                _ => go(kind, n - 4, memo) + 2,
            },
            LatticeKind::Hex | LatticeKind::Tri => match n {
                2 | 3 => 2,
                _ => go(kind, n - 2, memo) + 1,
            },
            LatticeKind::Cubic => {
                let f = |m: i64| -> i64 {
                    if m <= 11 {
                        (2 * m + 2) / 3
                    } else if m <= 27 {
                        (2 * m + 3) / 3
                    } else {
                        (2 * m + 4) / 3
                    }
                };
                match n {
                    6 | 7 | 13 | 19 | 25 => f(n) + 1,
                    2..=40 => f(n),
                    41..=81 => f(n - 41) + 28,
                    _ => go(kind, n - 41, memo) + 28,
                }
            }
        };
        memo.insert(n, v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_spot_values() {
        assert_eq!(ell(LatticeKind::Square, 5).unwrap(), 4);
        assert_eq!(ell(LatticeKind::Hex, 7).unwrap(), 4);
        assert_eq!(ell(LatticeKind::Cubic, 6).unwrap(), 5);
        assert_eq!(ell(LatticeKind::Cubic, 7).unwrap(), 6);
        assert_eq!(ell(LatticeKind::Cubic, 41).unwrap(), 28);
        assert_eq!(ell(LatticeKind::Cubic, 124).unwrap(), 85);
    }

    #[test]
    fn domain_error_below_two() {
        assert!(ell(LatticeKind::Square, 1).is_err());
        assert!(ell(LatticeKind::Cubic, 0).is_err());
    }

    #[test]
    fn matches_reference_recursion() {
        for kind in LatticeKind::ALL {
            for n in 2..=10_000 {
                assert_eq!(
                    ell(kind, n).unwrap(),
                    reference::ell_recursive(kind, n),
                    "{kind} at n={n}"
                );
            }
        }
    }

    #[test]
    fn slopes() {
        for n in 6..=100_000 {
            assert_eq!(
                ell(LatticeKind::Square, n + 4).unwrap() - ell(LatticeKind::Square, n).unwrap(),
                2
            );
        }
        for n in 41..=100_000 {
            assert_eq!(
                ell(LatticeKind::Cubic, n + 41).unwrap() - ell(LatticeKind::Cubic, n).unwrap(),
                28
            );
        }
        for n in 2..=100_000 {
            assert_eq!(ell(LatticeKind::Hex, n).unwrap(), ell(LatticeKind::Tri, n).unwrap());
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_ell(LatticeKind::Square, 1).unwrap(), 0);
        assert_eq!(delta_ell(LatticeKind::Square, 3).unwrap(), 1);
        assert_eq!(delta_ell(LatticeKind::Square, 4).unwrap(), 2);
        assert_eq!(delta_ell(LatticeKind::Cubic, 41).unwrap(), 28);
    }

    #[test]
    fn delta_cubic_41_matches_scan() {
        // liminf over a long scan equals the one-period minimum.
        let scan_min = (82..2000)
            .map(|n| ell(LatticeKind::Cubic, n + 41).unwrap() - ell(LatticeKind::Cubic, n).unwrap())
            .min()
            .unwrap();
        assert_eq!(scan_min, delta_ell(LatticeKind::Cubic, 41).unwrap());
    }

    #[test]
    fn ell_within_bounds() {
        for kind in LatticeKind::ALL {
            let b = bounds(kind);
            for n in 2..=1_000_000 {
                let l = ell(kind, n).unwrap();
                assert!(b.lower.at_most(n, l) || b.lower.at_least(n, l), "sanity");
                assert!(
                    b.upper.slope_num * n + b.upper.intercept_num >= l * b.upper.den,
                    "{kind} n={n}: ell above upper line"
                );
                assert!(
                    b.lower.slope_num * n + b.lower.intercept_num <= l * b.lower.den,
                    "{kind} n={n}: ell below lower line"
                );
            }
        }
    }

    #[test]
    fn saturated_sizes() {
        // Square: 4k+1. Hex/tri: even. Cubic: {6,7,13,19,25} + 41k+28.
        let sq: Vec<i64> = (2..=30).filter(|&n| saturated_size(LatticeKind::Square, n)).collect();
        assert_eq!(sq, vec![5, 9, 13, 17, 21, 25, 29]);
        let hx: Vec<i64> = (2..=12).filter(|&n| saturated_size(LatticeKind::Hex, n)).collect();
        assert_eq!(hx, vec![2, 4, 6, 8, 10, 12]);
        let cb: Vec<i64> = (2..=120).filter(|&n| saturated_size(LatticeKind::Cubic, n)).collect();
        assert_eq!(cb, vec![6, 7, 13, 19, 25, 28, 69, 110]);
    }

    #[test]
    fn bound_line_display() {
        let b = bounds(LatticeKind::Square);
        assert_eq!(b.upper.display_at(5), "4");
        assert_eq!(b.upper.display_at(4), "7/2");
    }
}
