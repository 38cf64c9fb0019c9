use alloc::vec;
use alloc::vec::Vec;

use super::field::PrimeField;
use super::subspace::{combine, Subspace};

/// All coefficient tuples in F_p^k in lexicographic order, or `None` if there
/// are more than `cap`.
pub fn coefficient_tuples(field: PrimeField, k: usize, cap: u64) -> Option<Vec<Vec<u32>>> {
    let n = field.count(k)?;
    if n > cap {
        return None;
    }
    let p = field.p();
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = vec![0u32; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < p {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Every element of a subspace.
pub fn elements(space: &Subspace, cap: u64) -> Option<Vec<Vec<u32>>> {
    let basis = space.basis_vectors();
    let coeffs = coefficient_tuples(space.field(), basis.len(), cap)?;
    Some(coeffs.iter().map(|c| combine(space.field(), space.ambient(), &basis, c)).collect())
}

/// One representative per line of a subspace: nonzero combinations whose
/// leading coefficient is 1.
pub fn projective_points(space: &Subspace, cap: u64) -> Option<Vec<Vec<u32>>> {
    let basis = space.basis_vectors();
    let coeffs = coefficient_tuples(space.field(), basis.len(), cap)?;
    Some(
        coeffs
            .iter()
            .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
            .map(|c| combine(space.field(), space.ambient(), &basis, c))
            .collect(),
    )
}

/// All subspaces `S` with `lower <= S <= upper`, ordered by dimension.
/// Returns `None` if the count would exceed `cap`.
pub fn subspaces_between(lower: &Subspace, upper: &Subspace, cap: u64) -> Option<Vec<Subspace>> {
    debug_assert!(upper.contains_space(lower));
    let field = lower.field();
    let d = upper.ambient();
    // complement of lower inside upper
    let mut comp = Vec::new();
    let mut cur = lower.clone();
    for v in upper.basis_vectors() {
        if !cur.contains(&v) {
            cur = cur.sum(&Subspace::span_vectors(field, d, core::slice::from_ref(&v)));
            comp.push(v);
        }
    }
    let k = comp.len();
    if subspace_count(field, k).is_none_or(|c| c > cap) {
        return None;
    }
    let mut out = Vec::new();
    for j in 0..=k {
        for rows in rref_shapes(field, k, j) {
            let vs: Vec<Vec<u32>> = rows.iter().map(|c| combine(field, d, &comp, c)).collect();
            out.push(lower.sum(&Subspace::span_vectors(field, d, &vs)));
        }
    }
    Some(out)
}

/// Number of subspaces of F_p^k.
pub fn subspace_count(field: PrimeField, k: usize) -> Option<u64> {
    let p = field.p() as u128;
    let mut total: u128 = 0;
    for j in 0..=k {
        // Gaussian binomial [k choose j]_p
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..j {
            num = num.checked_mul(p.checked_pow((k - i) as u32)? - 1)?;
            den = den.checked_mul(p.checked_pow((i + 1) as u32)? - 1)?;
        }
        total = total.checked_add(num / den)?;
    }
    u64::try_from(total).ok()
}

/// All `j x k` matrices in reduced row echelon form of full rank `j`.
fn rref_shapes(field: PrimeField, k: usize, j: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    pivot_sets(k, j, 0, &mut pivots, &mut |piv| {
        // free slots: (row i, col c) with c > piv[i] and c not a pivot
        let slots: Vec<(usize, usize)> = (0..j)
            .flat_map(|i| ((piv[i] + 1)..k).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
            .collect();
        let fills = coefficient_tuples(field, slots.len(), u64::MAX).expect("bounded by subspace count");
        for fill in fills {
            let mut rows = vec![vec![0u32; k]; j];
            for (i, &pc) in piv.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for (&(i, c), &x) in slots.iter().zip(&fill) {
                rows[i][c] = x;
            }
            out.push(rows);
        }
    });
    out
}

fn pivot_sets(k: usize, j: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == j {
        f(cur);
        return;
    }
    for c in start..k {
        cur.push(c);
        pivot_sets(k, j, c + 1, cur, f);
        cur.pop();
    }
}
