//! Multipartitions, standard tableaux, dominance, block shifts and the
//! parabolic coset combinatorics on which the seminormal construction rests.
//!
//! Conventions.  A multipartition with r components is grouped into p blocks
//! of d = r/p consecutive components each.  Tableaux are bijections from
//! diagram cells to 1..n, acted on by the symmetric group on the right:
//! (t w) places entry w(k) wherever t places k.  Permutations compose left
//! to right, matching that action.

use serde::Serialize;
use std::collections::HashMap;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must weakly decrease");
        assert!(parts.iter().all(|&x| x > 0), "parts must be positive");
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0];
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&len| len >= j).count()).collect())
    }
}

/// All partitions of `n`, largest part first ("(n)" before "(1,1,..,1)").
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    if n == 0 {
        out = vec![Partition::empty()];
    }
    out
}

/// A multipartition: a sequence of r partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Multipartition {
    comps: Vec<Partition>,
}

impl Multipartition {
    pub fn new(comps: Vec<Partition>) -> Self {
        Multipartition { comps }
    }

    pub fn components(&self) -> &[Partition] {
        &self.comps
    }

    pub fn r(&self) -> usize {
        self.comps.len()
    }

    pub fn size(&self) -> usize {
        self.comps.iter().map(|c| c.size()).sum()
    }

    /// Conjugate: reverse the components and conjugate each.
    pub fn conjugate(&self) -> Multipartition {
        Multipartition { comps: self.comps.iter().rev().map(|c| c.conjugate()).collect() }
    }

    /// The cyclic block shift by z: block b of the result is block b + z of
    /// the input (blocks of d = r/p consecutive components, indices mod p).
    pub fn shifted(&self, z: i64, p: usize) -> Multipartition {
        let r = self.r();
        assert!(p >= 1 && r.is_multiple_of(p), "block structure requires p | r");
        let d = r / p;
        let mut comps = Vec::with_capacity(r);
        for b in 0..p {
            let src = (b as i64 + z).rem_euclid(p as i64) as usize;
            for c in 0..d {
                comps.push(self.comps[src * d + c].clone());
            }
        }
        Multipartition { comps }
    }

    /// Minimal block-shift period o and the quotient p / o.
    pub fn orbit_invariants(&self, p: usize) -> (usize, usize) {
        for o in 1..=p {
            if p.is_multiple_of(o) && self.shifted(o as i64, p) == *self {
                return (o, p / o);
            }
        }
        unreachable!("shift by p is the identity")
    }

    /// Nested-array serialization used by the external interfaces.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.comps
                .iter()
                .map(|c| serde_json::Value::Array(c.parts().iter().map(|&x| x.into()).collect()))
                .collect(),
        )
    }

    /// Cells of the diagram in row-major order: by component, then row,
    /// then column (all 0-based).
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (comp, part) in self.comps.iter().enumerate() {
            for (row, &len) in part.parts().iter().enumerate() {
                for col in 0..len {
                    out.push(Cell { comp, row, col });
                }
            }
        }
        out
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        self.comps
            .get(cell.comp)
            .and_then(|p| p.parts().get(cell.row))
            .is_some_and(|&len| cell.col < len)
    }
}

/// All multipartitions with r components and total size n, in the fixed
/// enumeration order: sizes of the leading component descending, partitions
/// of equal size largest-part first, recursively over components.
pub fn enumerate_multipartitions(r: usize, n: usize) -> Vec<Multipartition> {
    fn rec(r_left: usize, n_left: usize, prefix: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if r_left == 0 {
            if n_left == 0 {
                out.push(Multipartition::new(prefix.clone()));
            }
            return;
        }
        for size in (0..=n_left).rev() {
            for part in enumerate_partitions(size) {
                prefix.push(part);
                rec(r_left - 1, n_left - size, prefix, out);
                prefix.pop();
            }
        }
    }
    assert!(r >= 1);
    let mut out = Vec::new();
    rec(r, n, &mut Vec::new(), &mut out);
    out
}

/// Dominance on multipartitions: `a` dominates `b` iff every prefix sum of
/// row lengths (reading all components in order) of `a` is at least the
/// corresponding prefix sum of `b`.  Requires equal r and equal size.
pub fn dominates(a: &Multipartition, b: &Multipartition) -> bool {
    assert_eq!(a.r(), b.r());
    assert_eq!(a.size(), b.size());
    let rows = |m: &Multipartition, s: usize, i: usize| -> usize {
        // sum of |comp_t| for t < s plus the first i rows of comp s
        let mut total = 0;
        for t in 0..s {
            total += m.comps[t].size();
        }
        total + m.comps[s].parts().iter().take(i).sum::<usize>()
    };
    for s in 0..a.r() {
        let max_rows = a.comps[s].rows().max(b.comps[s].rows());
        for i in 1..=max_rows {
            if rows(a, s, i) < rows(b, s, i) {
                return false;
            }
        }
    }
    true
}

/// One representative per block-shift orbit: the member that appears first
/// in the enumeration order of `enumerate_multipartitions`.
pub fn sigma_class_representatives(r: usize, p: usize, n: usize) -> Vec<Multipartition> {
    let all = enumerate_multipartitions(r, n);
    let index: HashMap<&Multipartition, usize> = all.iter().zip(0..).collect();
    let mut seen = vec![false; all.len()];
    let mut reps = Vec::new();
    for (i, shape) in all.iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(shape.clone());
        for z in 0..p {
            let member = shape.shifted(z as i64, p);
            seen[index[&member]] = true;
        }
    }
    reps
}

/// A diagram cell (component, row, column), all 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

// ---------------------------------------------------------------------------
// permutations
// ---------------------------------------------------------------------------

/// A permutation of 1..n in array form.  `then` composes left to right,
/// matching the right action on tableaux.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>, // 0-based: images[i] = w(i+1) - 1
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images_one_based(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v >= 1 && v <= n && !seen[v - 1], "not a bijection");
            seen[v - 1] = true;
        }
        Permutation { images: images.into_iter().map(|v| v - 1).collect() }
    }

    /// The adjacent transposition (i, i+1) with 1 <= i < n.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] + 1
    }

    /// First self, then other.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: self.images.iter().map(|&v| other.images[v]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }
}

/// A canonical reduced word for w: generator indices i_1, ..., i_N with
/// w = s_{i_1} s_{i_2} ... s_{i_N} (composed left to right), chosen by
/// repeatedly removing the smallest position descent.
pub fn canonical_word(w: &Permutation) -> Vec<usize> {
    let n = w.n();
    let mut v = w.one_line();
    let mut word = Vec::with_capacity(w.length());
    loop {
        let mut descent = None;
        for i in 0..n.saturating_sub(1) {
            if v[i] > v[i + 1] {
                descent = Some(i);
                break;
            }
        }
        match descent {
            Some(i) => {
                v.swap(i, i + 1);
                word.push(i + 1);
            }
            None => break,
        }
    }
    word
}

/// The block exchange w_{a,b}^<k>: sends k+i to k+b+i for 1 <= i <= a and
/// k+a+j to k+j for 1 <= j <= b, fixing everything else.  Its length is ab.
pub fn block_shift_perm(n: usize, a: usize, b: usize, k: usize) -> Permutation {
    assert!(k + a + b <= n, "blocks must fit inside 1..n");
    let mut images: Vec<usize> = (1..=n).collect();
    for i in 1..=a {
        images[k + i - 1] = k + b + i;
    }
    for j in 1..=b {
        images[k + a + j - 1] = k + j;
    }
    Permutation::from_images_one_based(images)
}

/// Decompose w = x . d with x in the Young subgroup of the composition
/// (a, n-a) and d the minimal-length representative of its right coset.
/// Lengths add: len(x) + len(d) = len(w).
pub fn parabolic_decompose(w: &Permutation, a: usize) -> (Permutation, Permutation) {
    let n = w.n();
    assert!(a <= n);
    // d maps {1..a} onto w({1..a}) increasingly and likewise the complement.
    let mut first: Vec<usize> = (1..=a).map(|y| w.apply(y)).collect();
    let mut second: Vec<usize> = (a + 1..=n).map(|y| w.apply(y)).collect();
    first.sort_unstable();
    second.sort_unstable();
    first.extend(second);
    let d = Permutation::from_images_one_based(first);
    let x = w.then(&d.inverse());
    debug_assert_eq!(x.length() + d.length(), w.length());
    (x, d)
}

// ---------------------------------------------------------------------------
// standard tableaux
// ---------------------------------------------------------------------------

/// A standard tableau: a filling of a multipartition diagram by 1..n that
/// increases along rows and down columns of every component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Multipartition,
    cell_of: Vec<Cell>, // entry k sits at cell_of[k-1]
}

impl StandardTableau {
    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.cell_of.len()
    }

    /// The cell containing entry k (1-based, total for 1 <= k <= n).
    pub fn cell(&self, k: usize) -> Cell {
        self.cell_of[k - 1]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cell_of
    }

    pub fn from_cells(shape: Multipartition, cell_of: Vec<Cell>) -> Self {
        let t = StandardTableau { shape, cell_of };
        assert!(t.is_standard(), "filling is not standard");
        t
    }

    fn entry_grid(&self) -> HashMap<Cell, usize> {
        self.cell_of.iter().enumerate().map(|(k, &c)| (c, k + 1)).collect()
    }

    pub fn is_standard(&self) -> bool {
        if self.shape.size() != self.cell_of.len() {
            return false;
        }
        let grid = self.entry_grid();
        if grid.len() != self.cell_of.len() {
            return false;
        }
        for (&cell, &entry) in &grid {
            if !self.shape.contains_cell(cell) {
                return false;
            }
            if cell.col > 0 {
                let left = grid[&Cell { col: cell.col - 1, ..cell }];
                if left >= entry {
                    return false;
                }
            }
            if cell.row > 0 {
                let up = grid[&Cell { row: cell.row - 1, ..cell }];
                if up >= entry {
                    return false;
                }
            }
        }
        true
    }

    /// The row-reading filling: 1..n along the rows of component 1, then
    /// component 2, and so on.
    pub fn initial(shape: &Multipartition) -> Self {
        StandardTableau { shape: shape.clone(), cell_of: shape.cells() }
    }

    /// Conjugate tableau, a standard filling of the conjugate shape.
    pub fn conjugate(&self) -> StandardTableau {
        let r = self.shape.r();
        let shape = self.shape.conjugate();
        let cell_of = self
            .cell_of
            .iter()
            .map(|c| Cell { comp: r - 1 - c.comp, row: c.col, col: c.row })
            .collect();
        StandardTableau { shape, cell_of }
    }

    /// Right action by a permutation: the result places entry w(k) where
    /// self places k.  The result need not be standard.
    pub fn apply_unchecked(&self, w: &Permutation) -> StandardTableau {
        let inv = w.inverse();
        let cell_of = (1..=self.n()).map(|k| self.cell(inv.apply(k))).collect();
        StandardTableau { shape: self.shape.clone(), cell_of }
    }

    /// Right action that checks standardness.
    pub fn apply(&self, w: &Permutation) -> Option<StandardTableau> {
        let t = self.apply_unchecked(w);
        t.is_standard().then_some(t)
    }

    /// Swap entries i and i+1; None if the result is not standard.
    pub fn swap_entries(&self, i: usize) -> Option<StandardTableau> {
        self.apply(&Permutation::transposition(self.n(), i))
    }

    /// Whether entries i and i+1 share a row (respectively a column) of the
    /// same component.
    pub fn same_row(&self, i: usize) -> bool {
        let a = self.cell(i);
        let b = self.cell(i + 1);
        a.comp == b.comp && a.row == b.row
    }

    pub fn same_col(&self, i: usize) -> bool {
        let a = self.cell(i);
        let b = self.cell(i + 1);
        a.comp == b.comp && a.col == b.col
    }

    /// The permutation d(t) with initial(shape) . d(t) = t.
    pub fn word_permutation(&self) -> Permutation {
        let initial = self.shape.cells();
        let grid = self.entry_grid();
        // d(y) = entry of self at the cell where the initial tableau has y
        let images = initial.iter().map(|c| grid[c]).collect();
        Permutation::from_images_one_based(images)
    }

    /// Block shift: block b of the result is block b + z of self.
    pub fn shifted(&self, z: i64, p: usize) -> StandardTableau {
        let r = self.shape.r();
        assert!(p >= 1 && r.is_multiple_of(p));
        let d = r / p;
        let shape = self.shape.shifted(z, p);
        let cell_of = self
            .cell_of
            .iter()
            .map(|c| {
                let block = c.comp / d;
                let within = c.comp % d;
                let new_block = (block as i64 - z).rem_euclid(p as i64) as usize;
                Cell { comp: new_block * d + within, ..*c }
            })
            .collect();
        StandardTableau { shape, cell_of }
    }

    /// The shape of the restriction to entries 1..k.
    pub fn restricted_shape(&self, k: usize) -> Multipartition {
        let mut row_counts: Vec<Vec<usize>> =
            self.shape.components().iter().map(|c| vec![0; c.rows()]).collect();
        for entry in 1..=k {
            let c = self.cell(entry);
            row_counts[c.comp][c.row] += 1;
        }
        Multipartition::new(
            row_counts
                .into_iter()
                .map(|rows| {
                    let parts: Vec<usize> = rows.into_iter().take_while(|&x| x > 0).collect();
                    Partition::new(parts)
                })
                .collect(),
        )
    }

    pub fn serialize_entries(&self) -> serde_json::Value {
        let grid = self.entry_grid();
        serde_json::Value::Array(
            self.shape
                .components()
                .iter()
                .enumerate()
                .map(|(comp, part)| {
                    serde_json::Value::Array(
                        part.parts()
                            .iter()
                            .enumerate()
                            .map(|(row, &len)| {
                                serde_json::Value::Array(
                                    (0..len)
                                        .map(|col| grid[&Cell { comp, row, col }].into())
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Dominance on standard tableaux: compare the shapes of all restrictions.
pub fn tableau_dominates(s: &StandardTableau, t: &StandardTableau) -> bool {
    assert_eq!(s.n(), t.n());
    assert_eq!(s.shape().r(), t.shape().r());
    (1..=s.n()).all(|k| dominates(&s.restricted_shape(k), &t.restricted_shape(k)))
}

/// The pair (row-reading tableau, column-reading tableau): the maximum and
/// minimum of Std(shape) under dominance.
pub fn initial_tableaux(shape: &Multipartition) -> (StandardTableau, StandardTableau) {
    let top = StandardTableau::initial(shape);
    let bottom = StandardTableau::initial(&shape.conjugate()).conjugate();
    (top, bottom)
}

/// All standard tableaux of the given shape.  Entries 1..n are placed
/// depth-first, trying addable cells in row-major order, so the first
/// element is always the row-reading tableau and the order is deterministic.
pub fn enumerate_standard_tableaux(shape: &Multipartition) -> Vec<StandardTableau> {
    let n = shape.size();
    let mut out = Vec::new();
    let mut filled: HashMap<Cell, usize> = HashMap::new();
    let mut prefix: Vec<Cell> = Vec::new();
    let all_cells = shape.cells();

    fn addable(shape: &Multipartition, filled: &HashMap<Cell, usize>, cell: Cell) -> bool {
        if filled.contains_key(&cell) || !shape.contains_cell(cell) {
            return false;
        }
        let left_ok = cell.col == 0 || filled.contains_key(&Cell { col: cell.col - 1, ..cell });
        let up_ok = cell.row == 0 || filled.contains_key(&Cell { row: cell.row - 1, ..cell });
        left_ok && up_ok
    }

    fn rec(
        shape: &Multipartition,
        n: usize,
        all_cells: &[Cell],
        filled: &mut HashMap<Cell, usize>,
        prefix: &mut Vec<Cell>,
        out: &mut Vec<StandardTableau>,
    ) {
        if prefix.len() == n {
            out.push(StandardTableau { shape: shape.clone(), cell_of: prefix.clone() });
            return;
        }
        let next = prefix.len() + 1;
        for &cell in all_cells {
            if addable(shape, filled, cell) {
                filled.insert(cell, next);
                prefix.push(cell);
                rec(shape, n, all_cells, filled, prefix, out);
                prefix.pop();
                filled.remove(&cell);
            }
        }
    }

    rec(shape, n, &all_cells, &mut filled, &mut prefix, &mut out);
    out
}

/// A canonical reduced word for d(t): straighten t to the row-reading
/// tableau by adjacent entry swaps, always taking the smallest index that
/// shortens d; the collected word is reversed so that walking it from the
/// row-reading tableau reaches t through a dominance-decreasing chain of
/// standard tableaux.
pub fn tableau_word(t: &StandardTableau) -> (Permutation, Vec<usize>) {
    let d = t.word_permutation();
    let n = d.n();
    let mut w = d.clone();
    let mut w_inv = w.inverse();
    let mut collected = Vec::with_capacity(w.length());
    while !w.is_identity() {
        let mut chosen = None;
        for i in 1..n {
            if w_inv.apply(i) > w_inv.apply(i + 1) {
                chosen = Some(i);
                break;
            }
        }
        let i = chosen.expect("non-identity permutation has a descent");
        let s = Permutation::transposition(n, i);
        w = w.then(&s);
        w_inv = w.inverse();
        collected.push(i);
    }
    collected.reverse();
    (d, collected)
}

/// The parabolic straightening m_k: with a_k the number of boxes in the
/// first k blocks, decompose d(t) = x . d with x in the Young subgroup of
/// (a_k, n - a_k) and d minimal in its coset, and return initial(shape) . x.
/// The index k is taken mod p, and k = 0 returns t itself.
pub fn parabolic_straighten(t: &StandardTableau, k: usize, p: usize) -> StandardTableau {
    let k = k % p;
    if k == 0 {
        return t.clone();
    }
    let r = t.shape().r();
    let d_comps = r / p;
    let cut: usize = t.shape().components()[..k * d_comps].iter().map(|c| c.size()).sum();
    let (x, _) = parabolic_decompose(&t.word_permutation(), cut);
    StandardTableau::initial(t.shape())
        .apply(&x)
        .expect("parabolic part of d(t) yields a standard tableau")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(comps: Vec<Vec<usize>>) -> Multipartition {
        Multipartition::new(comps.into_iter().map(Partition::new).collect())
    }

    #[test]
    fn enumerate_multipartitions_examples() {
        let one_comp = enumerate_multipartitions(1, 3);
        assert_eq!(one_comp, vec![mp(vec![vec![3]]), mp(vec![vec![2, 1]]), mp(vec![vec![1, 1, 1]])]);
        assert_eq!(enumerate_multipartitions(2, 2).len(), 5);
        assert_eq!(enumerate_multipartitions(2, 0), vec![mp(vec![vec![], vec![]])]);
    }

    #[test]
    fn standard_tableaux_counts_and_first_element() {
        let two_cols = mp(vec![vec![1], vec![1]]);
        let tabs = enumerate_standard_tableaux(&two_cols);
        assert_eq!(tabs.len(), 2);
        assert_eq!(tabs[0], StandardTableau::initial(&two_cols));

        let hook = mp(vec![vec![2, 1]]);
        assert_eq!(enumerate_standard_tableaux(&hook).len(), 2);

        let three_boxes = mp(vec![vec![1], vec![1], vec![1]]);
        assert_eq!(enumerate_standard_tableaux(&three_boxes).len(), 6);
    }

    #[test]
    fn dominance_examples() {
        let a = mp(vec![vec![2], vec![]]);
        let b = mp(vec![vec![1, 1], vec![]]);
        assert!(dominates(&a, &b));
        assert!(!dominates(&b, &a));

        // the row-reading tableau dominates everything of its shape
        for shape in enumerate_multipartitions(2, 3) {
            let tabs = enumerate_standard_tableaux(&shape);
            let (top, bottom) = initial_tableaux(&shape);
            for t in &tabs {
                assert!(tableau_dominates(&top, t));
                assert!(tableau_dominates(t, &bottom));
            }
        }
    }

    #[test]
    fn dominance_antisymmetry_exhaustive() {
        for n in 0..=4 {
            let shapes = enumerate_multipartitions(2, n);
            for a in &shapes {
                for b in &shapes {
                    if dominates(a, b) && dominates(b, a) {
                        assert_eq!(a, b);
                    }
                }
            }
        }
        // an incomparable pair
        let a = mp(vec![vec![2, 2], vec![]]);
        let b = mp(vec![vec![3], vec![1]]);
        assert!(!dominates(&a, &b) && !dominates(&b, &a));
    }

    #[test]
    fn initial_tableaux_examples() {
        let row = mp(vec![vec![2]]);
        let (top, _) = initial_tableaux(&row);
        assert_eq!(top.cell(1), Cell { comp: 0, row: 0, col: 0 });
        assert_eq!(top.cell(2), Cell { comp: 0, row: 0, col: 1 });

        let two_comp = mp(vec![vec![1], vec![1]]);
        let (top, _) = initial_tableaux(&two_comp);
        assert_eq!(top.cell(1).comp, 0);

        let column = mp(vec![vec![1, 1]]);
        let (top, bottom) = initial_tableaux(&column);
        assert_eq!(top, bottom);
    }

    #[test]
    fn shift_examples() {
        let shape = mp(vec![vec![1], vec![]]);
        assert_eq!(shape.shifted(1, 2), mp(vec![vec![], vec![1]]));
        for shape in enumerate_multipartitions(2, 2) {
            assert_eq!(shape.shifted(2, 2), shape);
            for a in 0..4i64 {
                for b in 0..4i64 {
                    assert_eq!(shape.shifted(a, 2).shifted(b, 2), shape.shifted(a + b, 2));
                }
            }
            for t in enumerate_standard_tableaux(&shape) {
                assert_eq!(t.shifted(2, 2), t);
                assert_eq!(t.shifted(1, 2).shifted(1, 2), t);
                assert_eq!(t.shifted(1, 2).shape(), &shape.shifted(1, 2));
                assert!(t.shifted(1, 2).is_standard());
            }
        }
    }

    #[test]
    fn orbit_invariant_examples() {
        assert_eq!(mp(vec![vec![1], vec![1]]).orbit_invariants(2), (1, 2));
        assert_eq!(mp(vec![vec![2], vec![]]).orbit_invariants(2), (2, 1));
        // blocks (A, B, A, B) with A != B at p = 4, d = 1
        let abab = mp(vec![vec![1], vec![2], vec![1], vec![2]]);
        assert_eq!(abab.orbit_invariants(4), (2, 2));
    }

    #[test]
    fn class_representative_examples() {
        let reps = sigma_class_representatives(2, 2, 2);
        assert_eq!(
            reps,
            vec![mp(vec![vec![2], vec![]]), mp(vec![vec![1, 1], vec![]]), mp(vec![vec![1], vec![1]])]
        );
        let total: usize = reps.iter().map(|s| s.orbit_invariants(2).1).sum();
        assert_eq!(total, 4);

        // p = 1: every shape is its own class
        assert_eq!(sigma_class_representatives(2, 1, 2).len(), enumerate_multipartitions(2, 2).len());
    }

    #[test]
    fn tableau_word_examples() {
        let shape = mp(vec![vec![1], vec![1]]);
        let (top, _) = initial_tableaux(&shape);
        let (d, word) = tableau_word(&top);
        assert!(d.is_identity());
        assert!(word.is_empty());

        let other = top.swap_entries(1).unwrap();
        let (d, word) = tableau_word(&other);
        assert_eq!(d, Permutation::transposition(2, 1));
        assert_eq!(word, vec![1]);
    }

    #[test]
    fn tableau_word_is_reduced_and_walks_down() {
        for r in [1usize, 2] {
            for n in 0..=4usize {
                for shape in enumerate_multipartitions(r, n) {
                    let (top, bottom) = initial_tableaux(&shape);
                    for t in enumerate_standard_tableaux(&shape) {
                        let (d, word) = tableau_word(&t);
                        assert_eq!(word.len(), d.length(), "word not reduced");
                        // walking the word from the top stays standard and
                        // strictly descends in dominance
                        let mut u = top.clone();
                        for &i in &word {
                            let next = u.swap_entries(i).expect("prefix not standard");
                            assert!(tableau_dominates(&u, &next) && u != next);
                            u = next;
                        }
                        assert_eq!(u, t);
                        // the bottom tableau has the longest word
                        assert!(d.length() <= tableau_word(&bottom).0.length());
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_straighten_examples() {
        let shape = mp(vec![vec![1], vec![1]]);
        let (top, _) = initial_tableaux(&shape);
        let other = top.swap_entries(1).unwrap();

        // k = 0 is the identity
        assert_eq!(parabolic_straighten(&other, 0, 2), other);
        // d(t) = s_1 is a minimal coset representative for the cut (1, 1),
        // so the parabolic part is trivial
        assert_eq!(parabolic_straighten(&other, 1, 2), top);

        for shape in enumerate_multipartitions(2, 3) {
            let (top, _) = initial_tableaux(&shape);
            for t in enumerate_standard_tableaux(&shape) {
                for k in 0..2 {
                    let m = parabolic_straighten(&t, k, 2);
                    // idempotent, dominating, initial fixed
                    assert_eq!(parabolic_straighten(&m, k, 2), m);
                    assert!(tableau_dominates(&m, &t));
                    assert_eq!(parabolic_straighten(&top, k, 2), top);
                }
            }
        }
    }

    #[test]
    fn parabolic_decomposition_lengths_add() {
        for shape in enumerate_multipartitions(2, 4) {
            for t in enumerate_standard_tableaux(&shape) {
                let w = t.word_permutation();
                for cut in 0..=4usize {
                    let (x, d) = parabolic_decompose(&w, cut);
                    assert_eq!(x.then(&d), w);
                    assert_eq!(x.length() + d.length(), w.length());
                    // x preserves the cut blocks setwise
                    for y in 1..=4usize {
                        assert_eq!(y <= cut, x.apply(y) <= cut);
                    }
                }
            }
        }
    }

    #[test]
    fn block_shift_perm_examples() {
        assert_eq!(block_shift_perm(2, 1, 1, 0), Permutation::transposition(2, 1));
        assert!(block_shift_perm(5, 3, 0, 1).is_identity());
        let w = block_shift_perm(3, 2, 1, 0);
        assert_eq!(w.one_line(), vec![2, 3, 1]);
        assert_eq!(w.length(), 2);
        for (a, b, k) in [(1usize, 2usize, 1usize), (2, 2, 0), (3, 1, 0)] {
            let w = block_shift_perm(a + b + k, a, b, k);
            assert_eq!(w.length(), a * b);
        }
    }

    #[test]
    fn shift_preserves_tableau_counts() {
        for shape in enumerate_multipartitions(2, 4) {
            let tabs = enumerate_standard_tableaux(&shape);
            let shifted_shape = shape.shifted(1, 2);
            let shifted_tabs = enumerate_standard_tableaux(&shifted_shape);
            assert_eq!(tabs.len(), shifted_tabs.len());
            // shifting is a bijection onto the enumerated set
            for t in &tabs {
                assert!(shifted_tabs.contains(&t.shifted(1, 2)));
            }
        }
    }

    #[test]
    fn canonical_word_reconstructs() {
        // exhaustive over S_4
        let mut images = vec![1usize, 2, 3, 4];
        loop {
            let w = Permutation::from_images_one_based(images.clone());
            let word = canonical_word(&w);
            assert_eq!(word.len(), w.length());
            let mut acc = Permutation::identity(4);
            for &i in &word {
                acc = acc.then(&Permutation::transposition(4, i));
            }
            assert_eq!(acc, w);
            if !next_permutation(&mut images) {
                break;
            }
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}
