//! Exact rational linear feasibility: Fourier-Motzkin elimination and a
//! phase-one simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Q};

/// Whether `{w : a_k . w >= b_k for all k}` is nonempty.
pub fn fourier_motzkin_feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let nvars = a.first().map_or(0, Vec::len);
    let mut rows: Vec<(Vec<Q>, Q)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    for k in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.0[k].is_positive() {
                pos.push(row);
            } else if row.0[k].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        for (pc, pb) in &pos {
            for (nc, nb) in &neg {
                let s = pc[k].clone();
                let t = -nc[k].clone();
                let c: Vec<Q> = pc.iter().zip(nc).map(|(x, y)| x * &t + y * &s).collect();
                let rhs = pb * &t + nb * &s;
                rest.push(normalize_row(c, rhs));
            }
        }
        rest.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        rest.dedup();
        // Keep only the tightest bound for identical left-hand sides.
        let mut pruned: Vec<(Vec<Q>, Q)> = Vec::with_capacity(rest.len());
        for row in rest {
            match pruned.last_mut() {
                Some(last) if last.0 == row.0 => {
                    if row.1 > last.1 {
                        last.1 = row.1;
                    }
                }
                _ => pruned.push(row),
            }
        }
        rows = pruned;
    }
    rows.iter().all(|(_, rhs)| !rhs.is_positive())
}

/// Scale so the first nonzero coefficient has absolute value one.
fn normalize_row(c: Vec<Q>, rhs: Q) -> (Vec<Q>, Q) {
    match c.iter().find(|v| !v.is_zero()) {
        Some(p) => {
            let s = p.abs().recip();
            (c.iter().map(|v| v * &s).collect(), rhs * s)
        }
        None => (c, rhs),
    }
}

/// Phase-one simplex for `{x >= 0 : A x = b}`; returns a feasible point if one exists.
pub fn simplex_feasible(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Q::zero(); n]);
    }
    // Tableau columns: n structural, m artificial, then rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Q::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Q::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // Objective: minimize the sum of artificials, as reduced costs.
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Bland's rule: lowest entering index, ties on the ratio go to the lowest basic variable.
    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            break;
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for v in t[r].iter_mut() {
        *v = &*v * &inv;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= p * &f;
            }
        }
    }
}

/// `{w : A w >= b}` nonempty, via simplex on `w = w+ - w-` with surplus variables.
pub fn simplex_inequalities_feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let nv = a.first().map_or(0, Vec::len);
    let m = a.len();
    let rows: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.clone();
            r.extend(row.iter().map(|v| -v.clone()));
            let mut s = vec![Q::zero(); m];
            s[i] = -Q::one();
            r.extend(s);
            r
        })
        .collect();
    debug_assert!(rows.iter().all(|r| r.len() == 2 * nv + m));
    simplex_feasible(&rows, b).is_some()
}

/// Largest dimension handled by Fourier-Motzkin before switching to simplex.
pub const FOURIER_MOTZKIN_MAX_DIM: usize = 6;

/// Whether some vector of `span(basis)` (vectors in `Q^dim`) has sign pattern `sigma`.
pub fn sign_pattern_realizable(basis: &[Vec<Q>], sigma: &[i8], dim: usize) -> bool {
    if sigma.iter().all(|&s| s == 0) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    // Coordinates: v_i = sum_j basis[j][i] u_j.
    let coord = |i: usize| -> Vec<Q> { basis.iter().map(|b| b[i].clone()).collect() };
    let zero_rows: Vec<Vec<Q>> = (0..dim).filter(|&i| sigma[i] == 0).map(coord).collect();
    let d = basis.len();
    let param: Vec<Vec<Q>> = if zero_rows.is_empty() {
        (0..d).map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
    } else {
        linalg::kernel(&zero_rows, d)
    };
    if param.is_empty() {
        return false;
    }
    // Strict rows: sigma_i * (coord_i . (sum_k w_k param_k)) >= 1.
    let mut a = Vec::new();
    for i in (0..dim).filter(|&i| sigma[i] != 0) {
        let c = coord(i);
        let s = Q::from_integer(sigma[i].into());
        a.push(param.iter().map(|p| linalg::dot(&c, p) * &s).collect::<Vec<Q>>());
    }
    let b = vec![Q::one(); a.len()];
    if dim <= FOURIER_MOTZKIN_MAX_DIM {
        fourier_motzkin_feasible(&a, &b)
    } else {
        simplex_inequalities_feasible(&a, &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn simple_systems() {
        // w >= 1 and -w >= -2
        assert!(fourier_motzkin_feasible(&m(&[&[1], &[-1]]), &[q(1), q(-2)]));
        // w >= 1 and -w >= 0
        assert!(!fourier_motzkin_feasible(&m(&[&[1], &[-1]]), &[q(1), q(0)]));
        assert!(simplex_inequalities_feasible(&m(&[&[1], &[-1]]), &[q(1), q(-2)]));
        assert!(!simplex_inequalities_feasible(&m(&[&[1], &[-1]]), &[q(1), q(0)]));
    }

    #[test]
    fn cycle_flux_is_feasible() {
        // Ia w = -Ia 1 with w >= 0 for a 2-cycle.
        let ia = m(&[&[-1, 1], &[1, -1]]);
        let x = simplex_feasible(&ia, &[q(0), q(0)]).unwrap();
        assert_eq!(x.len(), 2);
    }

    #[test]
    fn sign_patterns_of_a_line() {
        let basis = m(&[&[1, -1]]);
        assert!(sign_pattern_realizable(&basis, &[1, -1], 2));
        assert!(sign_pattern_realizable(&basis, &[-1, 1], 2));
        assert!(!sign_pattern_realizable(&basis, &[1, 1], 2));
        assert!(!sign_pattern_realizable(&basis, &[1, 0], 2));
        assert!(sign_pattern_realizable(&basis, &[0, 0], 2));
    }

    proptest! {
        #[test]
        fn fourier_motzkin_agrees_with_simplex(
            rows in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..6),
            rhs in prop::collection::vec(-3i64..4, 6),
        ) {
            let a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let b: Vec<Q> = rhs[..a.len()].iter().map(|&v| q(v)).collect();
            prop_assert_eq!(fourier_motzkin_feasible(&a, &b), simplex_inequalities_feasible(&a, &b));
        }
    }
}
