//! The affine Cartan matrix of type `A_{n-1}^(1)` on indices `0..n`.
//!
//! `a(i,i) = 2`; neighbours on the cycle get `-1`, except that for `n = 2`
//! the two off-diagonal entries collapse to `-2` because `i - 1` and `i + 1`
//! coincide mod 2.  All other entries vanish.

/// Entry `a(i, j)` of the affine Cartan matrix, indices taken mod `n`.
pub fn cartan_entry(n: usize, i: usize, j: usize) -> i64 {
    assert!(n >= 2);
    let i = i % n;
    let j = j % n;
    let mut entry = 0;
    if i == j {
        entry += 2;
    }
    if (i + 1) % n == j {
        entry -= 1;
    }
    if (j + 1) % n == i {
        entry -= 1;
    }
    entry
}

/// Whether `i` and `j` are adjacent on the residue cycle.
pub fn adjacent(n: usize, i: usize, j: usize) -> bool {
    i != j && cartan_entry(n, i, j) != 0
}
