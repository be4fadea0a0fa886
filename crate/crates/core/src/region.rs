//! Sets of workspace cells.

use std::fmt;

/// A workspace cell, addressed by column and row. Row 0 is the top of the map.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CellCoord {
    pub col: i32,
    pub row: i32,
}

impl CellCoord {
    pub const fn new(col: i32, row: i32) -> Self {
        CellCoord { col, row }
    }

    /// Center of the cell in continuous workspace coordinates.
    pub fn center(self) -> [f64; 2] {
        [self.col as f64 + 0.5, self.row as f64 + 0.5]
    }
}

impl fmt::Debug for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.row)
    }
}

/// A finite set of cells, kept as a sorted, deduplicated vector.
///
/// Most sets handled by the planner are tiny (a swept footprint, one
/// viewcone), so a flat sorted vector beats a tree or hash set here.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RegionSet {
    cells: Vec<CellCoord>,
}

impl RegionSet {
    pub fn new() -> Self {
        RegionSet { cells: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: CellCoord) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn insert(&mut self, cell: CellCoord) -> bool {
        match self.cells.binary_search(&cell) {
            Ok(_) => false,
            Err(at) => {
                self.cells.insert(at, cell);
                true
            }
        }
    }

    pub fn remove(&mut self, cell: CellCoord) -> bool {
        match self.cells.binary_search(&cell) {
            Ok(at) => {
                self.cells.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    /// Cells in ascending `(col, row)` order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = CellCoord> + '_ {
        self.cells.iter().copied()
    }

    pub fn as_slice(&self) -> &[CellCoord] {
        &self.cells
    }

    pub fn union(&self, other: &RegionSet) -> RegionSet {
        let (a, b) = (&self.cells, &other.cells);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        RegionSet { cells: out }
    }

    pub fn difference(&self, other: &RegionSet) -> RegionSet {
        let mut out = Vec::with_capacity(self.cells.len());
        let mut j = 0;
        for &c in &self.cells {
            while j < other.cells.len() && other.cells[j] < c {
                j += 1;
            }
            if j < other.cells.len() && other.cells[j] == c {
                continue;
            }
            out.push(c);
        }
        RegionSet { cells: out }
    }

    pub fn intersection(&self, other: &RegionSet) -> RegionSet {
        self.difference(&self.difference(other))
    }

    pub fn is_subset(&self, other: &RegionSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn intersects(&self, other: &RegionSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().any(|c| large.contains(c))
    }

    /// Keeps only the cells for which `keep` returns true.
    pub fn retain(&mut self, keep: impl FnMut(&CellCoord) -> bool) {
        self.cells.retain(keep);
    }
}

impl fmt::Debug for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.cells.iter()).finish()
    }
}

impl FromIterator<CellCoord> for RegionSet {
    fn from_iter<I: IntoIterator<Item = CellCoord>>(iter: I) -> Self {
        let mut cells: Vec<CellCoord> = iter.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        RegionSet { cells }
    }
}

impl Extend<CellCoord> for RegionSet {
    fn extend<I: IntoIterator<Item = CellCoord>>(&mut self, iter: I) {
        self.cells.extend(iter);
        self.cells.sort_unstable();
        self.cells.dedup();
    }
}

impl<'a> IntoIterator for &'a RegionSet {
    type Item = CellCoord;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, CellCoord>>;

    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter().copied()
    }
}

pub fn union(a: &RegionSet, b: &RegionSet) -> RegionSet {
    a.union(b)
}

pub fn difference(a: &RegionSet, b: &RegionSet) -> RegionSet {
    a.difference(b)
}

pub fn size(a: &RegionSet) -> usize {
    a.len()
}
