//! Determinant, permanent and the Vere-Jones α-determinant
//! `det_α A = Σ_{ξ∈S_n} α^{n−ν(ξ)} Π_i a_{i,ξ(i)}` (ν = number of cycles).

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Largest order accepted by [`permanent`].
pub const MAX_PERMANENT_ORDER: usize = 24;
/// Largest order accepted by the permutation sum in [`alpha_determinant`].
pub const MAX_ENUMERATION_ORDER: usize = 10;
/// Largest order accepted by [`alpha_determinant_cycles`].
pub const MAX_CYCLE_DP_ORDER: usize = 16;

fn check_square(a: &DMatrix<f64>) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", a.nrows(), a.ncols())));
    }
    Ok(a.nrows())
}

/// Determinant by LU decomposition with partial pivoting. Singular → 0.
pub fn determinant(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant of a non-square matrix");
    let mut lu = a.clone();
    let mut det = 1.0;
    for k in 0..n {
        let mut p = k;
        for r in k + 1..n {
            if lu[(r, k)].abs() > lu[(p, k)].abs() {
                p = r;
            }
        }
        let pivot = lu[(p, k)];
        if pivot == 0.0 {
            return 0.0;
        }
        if p != k {
            lu.swap_rows(p, k);
            det = -det;
        }
        det *= pivot;
        for r in k + 1..n {
            let f = lu[(r, k)] / pivot;
            if f != 0.0 {
                for c in k + 1..n {
                    let v = lu[(k, c)];
                    lu[(r, c)] -= f * v;
                }
            }
        }
    }
    det
}

/// Permanent by Ryser's inclusion–exclusion formula, visiting column subsets
/// in Gray-code order.
pub fn permanent(a: &DMatrix<f64>) -> Result<f64> {
    let n = check_square(a)?;
    if n > MAX_PERMANENT_ORDER {
        return Err(Error::Guard(format!("permanent of order {n} exceeds {MAX_PERMANENT_ORDER}")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut row_sums = vec![0.0; n];
    let mut in_set = vec![false; n];
    let mut total = 0.0;
    let mut size = 0usize;
    for k in 1u64..(1u64 << n) {
        // bit flipped between Gray codes k-1 and k
        let j = k.trailing_zeros() as usize;
        let sign = if in_set[j] { -1.0 } else { 1.0 };
        in_set[j] = !in_set[j];
        if in_set[j] {
            size += 1;
        } else {
            size -= 1;
        }
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += sign * a[(i, j)];
        }
        let prod: f64 = row_sums.iter().product();
        if size % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(if n % 2 == 0 { total } else { -total })
}

/// Permanent of the matrix obtained from `a` by repeating row and column `i`
/// exactly `mult[i]` times. Ryser's formula grouped by repeated columns,
/// costing `Π (mult_i + 1)` products instead of `2^n`.
pub fn permanent_repeated(a: &DMatrix<f64>, mult: &[u32]) -> Result<f64> {
    let k = check_square(a)?;
    if mult.len() != k {
        return Err(Error::Dimension(format!("{} multiplicities for order {k}", mult.len())));
    }
    let n: u32 = mult.iter().sum();
    let classes: Vec<usize> = (0..k).filter(|&i| mult[i] > 0).collect();
    if classes.is_empty() {
        return Ok(1.0);
    }
    let work: f64 = classes.iter().map(|&i| f64::from(mult[i] + 1)).product();
    if work > 1e9 {
        return Err(Error::Guard(format!("repeated permanent needs {work:e} terms")));
    }
    let binom: Vec<Vec<f64>> = classes
        .iter()
        .map(|&i| (0..=mult[i]).map(|v| crate::configspace::binomial(mult[i], v)).collect())
        .collect();
    let mut v = vec![0u32; classes.len()];
    let mut total = 0.0;
    loop {
        let chosen: u32 = v.iter().sum();
        if chosen > 0 {
            let mut term: f64 = v.iter().enumerate().map(|(c, &vc)| binom[c][vc as usize]).product();
            for &x in &classes {
                let s: f64 = classes
                    .iter()
                    .zip(&v)
                    .map(|(&y, &vy)| f64::from(vy) * a[(x, y)])
                    .sum();
                term *= s.powi(mult[x] as i32);
            }
            if chosen % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        // odometer
        let mut c = 0;
        loop {
            if c == v.len() {
                return Ok(if n % 2 == 1 { -total } else { total });
            }
            if v[c] < mult[classes[c]] {
                v[c] += 1;
                break;
            }
            v[c] = 0;
            c += 1;
        }
    }
}

/// Vere-Jones α-determinant by direct summation over `S_n`
/// (`α = −1` uses [`determinant`], `α = 1` uses [`permanent`]).
pub fn alpha_determinant(a: &DMatrix<f64>, alpha: f64) -> Result<f64> {
    check_square(a)?;
    if alpha == -1.0 {
        return Ok(determinant(a));
    }
    if alpha == 1.0 {
        return permanent(a);
    }
    alpha_determinant_enumerated(a, alpha)
}

/// The defining permutation sum, without fast paths.
pub fn alpha_determinant_enumerated(a: &DMatrix<f64>, alpha: f64) -> Result<f64> {
    let n = check_square(a)?;
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Guard(format!(
            "α-determinant enumeration of order {n} exceeds {MAX_ENUMERATION_ORDER}"
        )));
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let powers: Vec<f64> = (0..=n).map(|k| alpha.powi(k as i32)).collect();
    let mut total = 0.0;
    enumerate(a, 0, 1.0, &mut perm, &mut used, &powers, &mut total);
    Ok(total)
}

fn enumerate(
    a: &DMatrix<f64>,
    row: usize,
    prod: f64,
    perm: &mut [usize],
    used: &mut [bool],
    powers: &[f64],
    total: &mut f64,
) {
    let n = perm.len();
    if row == n {
        *total += powers[n - cycle_count(perm)] * prod;
        return;
    }
    for col in 0..n {
        if used[col] {
            continue;
        }
        let entry = a[(row, col)];
        if entry == 0.0 {
            continue;
        }
        used[col] = true;
        perm[row] = col;
        enumerate(a, row + 1, prod * entry, perm, used, powers, total);
        used[col] = false;
    }
}

/// Number of cycles of a permutation given as `i ↦ perm[i]`.
pub fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

/// α-determinant through its cycle decomposition: every permutation is a
/// set of disjoint cycles, each contributing `α^{len−1} Π a_{i,ξ(i)}`.
/// Cycle weights come from a Hamiltonian-path table over subsets and are
/// then combined over set partitions, `O(2^n n² + 3^n)` in total.
pub fn alpha_determinant_cycles(a: &DMatrix<f64>, alpha: f64) -> Result<f64> {
    let n = check_square(a)?;
    if n > MAX_CYCLE_DP_ORDER {
        return Err(Error::Guard(format!("α-determinant of order {n} exceeds {MAX_CYCLE_DP_ORDER}")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let full = 1usize << n;
    // cycle[mask] = Σ over cyclic orders of mask (rooted at its lowest
    // element) of Π a_{i, next(i)}.
    let mut cycle = vec![0.0; full];
    let mut path = vec![0.0; full * n];
    for s in 0..n {
        let root = 1usize << s;
        path[root * n + s] = 1.0;
        // masks whose lowest set bit is s, in increasing order
        let mut mask = root;
        while mask < full {
            if mask & (root - 1) == 0 && mask & root != 0 {
                for v in 0..n {
                    let p = path[mask * n + v];
                    if p == 0.0 {
                        continue;
                    }
                    cycle[mask] += p * a[(v, s)];
                    for w in s + 1..n {
                        let bit = 1usize << w;
                        if mask & bit == 0 {
                            let e = a[(v, w)];
                            if e != 0.0 {
                                path[(mask | bit) * n + w] += p * e;
                            }
                        }
                    }
                }
            }
            mask += 1;
        }
    }
    let powers: Vec<f64> = (0..=n).map(|k| alpha.powi(k as i32)).collect();
    let mut f = vec![0.0; full];
    f[0] = 1.0;
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // enumerate sub-masks of `rest`; each cycle is low ∪ sub
        let mut sub = rest;
        let mut acc = 0.0;
        loop {
            let c = low | sub;
            let w = cycle[c];
            if w != 0.0 {
                acc += powers[c.count_ones() as usize - 1] * w * f[mask ^ c];
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        f[mask] = acc;
    }
    Ok(f[full - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(n, n, v)
    }

    #[test]
    fn small_values() {
        assert_eq!(determinant(&DMatrix::identity(3, 3)), 1.0);
        assert!((determinant(&m(2, &[0.5, 0.25, 0.25, 0.5])) - 0.1875).abs() < 1e-15);
        assert_eq!(determinant(&m(2, &[1.0, 1.0, 1.0, 1.0])), 0.0);
        assert_eq!(permanent(&DMatrix::identity(3, 3)).unwrap(), 1.0);
        assert_eq!(permanent(&m(2, &[1.0, 1.0, 1.0, 1.0])).unwrap(), 2.0);
        assert_eq!(permanent(&DMatrix::zeros(0, 0)).unwrap(), 1.0);
        assert_eq!(determinant(&DMatrix::zeros(0, 0)), 1.0);
    }

    #[test]
    fn two_by_two_alpha() {
        let a = m(2, &[2.0, 3.0, 5.0, 7.0]);
        for alpha in [-1.0, -0.5, 0.0, 0.3, 1.0, 2.0] {
            let want = 2.0 * 7.0 + alpha * 3.0 * 5.0;
            assert!((alpha_determinant(&a, alpha).unwrap() - want).abs() < 1e-12);
            assert!((alpha_determinant_cycles(&a, alpha).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn order_zero_and_one() {
        let e = DMatrix::<f64>::zeros(0, 0);
        assert_eq!(alpha_determinant_enumerated(&e, 0.7).unwrap(), 1.0);
        assert_eq!(alpha_determinant_cycles(&e, 0.7).unwrap(), 1.0);
        let one = m(1, &[4.5]);
        assert_eq!(alpha_determinant_enumerated(&one, -0.3).unwrap(), 4.5);
        assert_eq!(alpha_determinant_cycles(&one, -0.3).unwrap(), 4.5);
    }

    #[test]
    fn guards() {
        assert!(alpha_determinant_enumerated(&DMatrix::identity(11, 11), 0.5).is_err());
        assert!(permanent(&DMatrix::identity(25, 25)).is_err());
        assert!(alpha_determinant_cycles(&DMatrix::identity(17, 17), 0.5).is_err());
        assert!(permanent(&DMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn repeated_permanent_of_constant_block() {
        // b×b all-m matrix: per = b!·m^b
        let a = m(1, &[0.5]);
        for b in 0..8u32 {
            let want = crate::configspace::factorial(b) * 0.5_f64.powi(b as i32);
            assert!((permanent_repeated(&a, &[b]).unwrap() - want).abs() < 1e-12 * want.max(1.0));
        }
    }

    #[test]
    fn cycle_counting() {
        assert_eq!(cycle_count(&[0, 1, 2]), 3);
        assert_eq!(cycle_count(&[1, 0, 2]), 2);
        assert_eq!(cycle_count(&[1, 2, 0]), 1);
    }
}
