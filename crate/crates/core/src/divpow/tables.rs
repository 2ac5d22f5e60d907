use std::fmt;

/// Nonnegative integer matrix with prescribed row and column sums.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl ContingencyTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        ContingencyTable {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for ContingencyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Calls `visit` with the flat row-major entries of every table in
/// `M(α, β)`, in lexicographic order.
pub fn for_each_table(alpha: &[u32], beta: &[u32], mut visit: impl FnMut(&[u32])) {
    if alpha.iter().sum::<u32>() != beta.iter().sum::<u32>() {
        return;
    }
    let (r, c) = (alpha.len(), beta.len());
    if r == 0 || c == 0 {
        visit(&[]);
        return;
    }
    let mut entries = vec![0u32; r * c];
    let mut row_rem = alpha.to_vec();
    let mut col_rem = beta.to_vec();
    fill(0, r, c, &mut entries, &mut row_rem, &mut col_rem, &mut visit);
}

fn fill(
    cell: usize,
    r: usize,
    c: usize,
    entries: &mut [u32],
    row_rem: &mut [u32],
    col_rem: &mut [u32],
    visit: &mut impl FnMut(&[u32]),
) {
    if cell == r * c {
        visit(entries);
        return;
    }
    let (i, j) = (cell / c, cell % c);
    let hi = row_rem[i].min(col_rem[j]);
    // The last column must exhaust the row and the last row the column.
    let lo = if j == c - 1 {
        row_rem[i]
    } else if i == r - 1 {
        col_rem[j]
    } else {
        0
    };
    if lo > hi {
        return;
    }
    if j == c - 1 && i == r - 1 && row_rem[i] != col_rem[j] {
        return;
    }
    for v in lo..=hi {
        entries[cell] = v;
        row_rem[i] -= v;
        col_rem[j] -= v;
        fill(cell + 1, r, c, entries, row_rem, col_rem, visit);
        row_rem[i] += v;
        col_rem[j] += v;
    }
    entries[cell] = 0;
}

/// Every table with row sums `alpha` and column sums `beta`; empty when the
/// totals differ.
pub fn contingency_tables(alpha: &[u32], beta: &[u32]) -> Vec<ContingencyTable> {
    let mut out = Vec::new();
    for_each_table(alpha, beta, |e| {
        out.push(ContingencyTable {
            rows: alpha.len(),
            cols: beta.len(),
            entries: e.to_vec(),
        })
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent oracle: every matrix with entries bounded by the margins,
    /// filtered by its sums.
    fn brute(alpha: &[u32], beta: &[u32]) -> BTreeSet<Vec<Vec<u32>>> {
        let (r, c) = (alpha.len(), beta.len());
        let cap = alpha.iter().copied().max().unwrap_or(0);
        let cells = r * c;
        let mut out = BTreeSet::new();
        let mut digits = vec![0u32; cells];
        loop {
            let m: Vec<Vec<u32>> = (0..r).map(|i| digits[i * c..(i + 1) * c].to_vec()).collect();
            let rows_ok = m.iter().zip(alpha).all(|(row, a)| row.iter().sum::<u32>() == *a);
            let cols_ok = (0..c).all(|j| m.iter().map(|row| row[j]).sum::<u32>() == beta[j]);
            if rows_ok && cols_ok {
                out.insert(m);
            }
            let mut k = 0;
            loop {
                if k == cells {
                    return out;
                }
                digits[k] += 1;
                if digits[k] <= cap {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn single_cell() {
        let t = contingency_tables(&[2], &[2]);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].to_rows(), vec![vec![2]]);
    }

    #[test]
    fn permutation_tables() {
        let t = contingency_tables(&[1, 1], &[1, 1]);
        let got: BTreeSet<_> = t.iter().map(|t| t.to_rows()).collect();
        let want = BTreeSet::from([vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]);
        assert_eq!(got, want);
    }

    #[test]
    fn mismatched_totals_are_empty() {
        assert!(contingency_tables(&[1], &[2]).is_empty());
    }

    #[test]
    fn lexicographic_and_exhaustive_against_brute_force() {
        let margins: Vec<Vec<u32>> = vec![vec![1, 2], vec![3], vec![2, 1, 0], vec![1, 1, 1], vec![0, 2]];
        for a in &margins {
            for b in &margins {
                let t = contingency_tables(a, b);
                let flat: Vec<_> = t.iter().map(|t| t.to_rows()).collect();
                let mut sorted = flat.clone();
                sorted.sort();
                assert_eq!(flat, sorted, "order for {a:?} {b:?}");
                let got: BTreeSet<_> = flat.into_iter().collect();
                assert_eq!(got.len(), t.len(), "duplicates for {a:?} {b:?}");
                if a.iter().sum::<u32>() == b.iter().sum::<u32>() {
                    assert_eq!(got, brute(a, b), "{a:?} {b:?}");
                } else {
                    assert!(got.is_empty());
                }
                for table in &t {
                    assert_eq!(table.row_sums(), *a);
                    assert_eq!(table.col_sums(), *b);
                }
            }
        }
    }

    #[test]
    fn transpose_bijection_counts() {
        // |M(α,β)| = |M(β,α)| for all margins with entries ≤ 3 and length ≤ 2.
        let mut margins = Vec::new();
        for a in 0..=3 {
            margins.push(vec![a]);
            for b in 0..=3 {
                margins.push(vec![a, b]);
            }
        }
        for a in &margins {
            for b in &margins {
                let ab = contingency_tables(a, b);
                let ba = contingency_tables(b, a);
                assert_eq!(ab.len(), ba.len());
                let back: BTreeSet<_> = ab.iter().map(|t| t.transpose()).collect();
                assert_eq!(back, ba.into_iter().collect());
            }
        }
    }
}
