//! Block storage for associator symbols.
//!
//! F-symbols and L-symbols have the same shape: for a key `(a, b, m, n)` the
//! rows are the trees `(a ⊗ b → e) ▷ m → n` and the columns are the trees
//! `a ▷ (b ▷ m → p) → n`. For F the "module" is the category itself.

use std::collections::BTreeMap;

use crate::category::ring::{FusionAction, FusionRing};
use crate::error::{Error, Result, Rule, ValidationReport};
use crate::linalg::{CMatrix, C64, ZERO};

/// A fusion tree with one internal label.
///
/// Rows: `first` is the vertex `a ⊗ b → mid`, `second` is `mid ▷ m → n`.
/// Columns: `first` is the vertex `b ▷ m → mid`, `second` is `a ▷ mid → n`.
/// Ordering is by internal label first, then the two multiplicity indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub mid: usize,
    pub first: usize,
    pub second: usize,
}

impl Tree {
    pub const fn new(first: usize, mid: usize, second: usize) -> Self {
        Tree { mid, first, second }
    }
}

pub type BlockKey = [usize; 4];

pub fn left_trees(ring: &FusionRing, action: &impl FusionAction, a: usize, b: usize, m: usize, n: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    for e in 0..ring.rank() {
        for first in 0..ring.n(a, b, e) {
            for second in 0..action.act(e, m, n) {
                out.push(Tree { mid: e, first, second });
            }
        }
    }
    out
}

pub fn right_trees(action: &impl FusionAction, a: usize, b: usize, m: usize, n: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    for p in 0..action.action_rank() {
        for first in 0..action.act(b, m, p) {
            for second in 0..action.act(a, p, n) {
                out.push(Tree { mid: p, first, second });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub left: Vec<Tree>,
    pub right: Vec<Tree>,
    pub matrix: CMatrix,
}

impl Block {
    #[inline]
    pub fn left_pos(&self, t: Tree) -> Option<usize> {
        self.left.binary_search(&t).ok()
    }

    #[inline]
    pub fn right_pos(&self, t: Tree) -> Option<usize> {
        self.right.binary_search(&t).ok()
    }

    #[inline]
    pub fn get(&self, l: Tree, r: Tree) -> C64 {
        match (self.left_pos(l), self.right_pos(r)) {
            (Some(i), Some(j)) => self.matrix[(i, j)],
            _ => ZERO,
        }
    }
}

/// All blocks admitted by the fusion rules. Every admissible key is present.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymbolTable {
    blocks: BTreeMap<BlockKey, Block>,
}

fn admissible_keys(ring: &FusionRing, action: &impl FusionAction) -> Vec<(BlockKey, Vec<Tree>, Vec<Tree>)> {
    let r = ring.rank();
    let k = action.action_rank();
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for m in 0..k {
                for n in 0..k {
                    let left = left_trees(ring, action, a, b, m, n);
                    if left.is_empty() {
                        continue;
                    }
                    let right = right_trees(action, a, b, m, n);
                    out.push(([a, b, m, n], left, right));
                }
            }
        }
    }
    out
}

impl SymbolTable {
    /// Builds the table from dense blocks, one per admissible key.
    pub fn from_blocks(ring: &FusionRing, action: &impl FusionAction, mut given: BTreeMap<BlockKey, CMatrix>) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for (key, left, right) in admissible_keys(ring, action) {
            let matrix = given
                .remove(&key)
                .ok_or_else(|| Error::Missing(format!("block {key:?} is required by fusion but absent")))?;
            if matrix.shape() != (left.len(), right.len()) {
                return Err(Error::Malformed(format!(
                    "block {key:?} has shape {:?}, fusion requires {:?}",
                    matrix.shape(),
                    (left.len(), right.len())
                )));
            }
            blocks.insert(key, Block { left, right, matrix });
        }
        if let Some(key) = given.keys().next() {
            return Err(Error::Malformed(format!("block {key:?} is not admitted by fusion")));
        }
        Ok(SymbolTable { blocks })
    }

    /// Builds the table from sparse entries. Absent entries are zero; a whole
    /// admissible block without any entry is an incompleteness error.
    pub fn from_entries(ring: &FusionRing, action: &impl FusionAction, entries: &[(BlockKey, Tree, Tree, C64)]) -> Result<Self> {
        let mut blocks: BTreeMap<BlockKey, Block> = admissible_keys(ring, action)
            .into_iter()
            .map(|(key, left, right)| {
                let matrix = CMatrix::zeros(left.len(), right.len());
                (key, Block { left, right, matrix })
            })
            .collect();
        let mut touched = std::collections::BTreeSet::new();
        let mut rep = ValidationReport::default();
        for &(key, l, r, v) in entries {
            let Some(block) = blocks.get_mut(&key) else {
                rep.push(Rule::FusionSupport, format!("entry in block {key:?}, which fusion forbids"));
                continue;
            };
            match (block.left_pos(l), block.right_pos(r)) {
                (Some(i), Some(j)) => {
                    block.matrix[(i, j)] = v;
                    touched.insert(key);
                }
                _ => rep.push(Rule::FusionSupport, format!("entry {l:?},{r:?} of block {key:?} violates fusion ranges")),
            }
        }
        if !rep.is_ok() {
            return Err(Error::Validation(rep));
        }
        if let Some(key) = blocks.keys().find(|k| !touched.contains(*k)) {
            return Err(Error::Missing(format!("block {key:?} is required by fusion but has no entries")));
        }
        Ok(SymbolTable { blocks })
    }

    pub fn block(&self, key: BlockKey) -> Option<&Block> {
        self.blocks.get(&key)
    }

    /// Dense block, or a 0×0 matrix when fusion forbids the key.
    pub fn matrix(&self, key: BlockKey) -> CMatrix {
        self.blocks.get(&key).map(|b| b.matrix.clone()).unwrap_or_else(|| CMatrix::zeros(0, 0))
    }

    #[inline]
    pub fn get(&self, key: BlockKey, l: Tree, r: Tree) -> C64 {
        self.blocks.get(&key).map(|b| b.get(l, r)).unwrap_or(ZERO)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockKey, &Block)> {
        self.blocks.iter()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Entries with modulus above `floor`, in key then row then column order.
    pub fn entries(&self, floor: f64) -> Vec<(BlockKey, Tree, Tree, C64)> {
        let mut out = Vec::new();
        for (key, b) in &self.blocks {
            for (i, l) in b.left.iter().enumerate() {
                for (j, r) in b.right.iter().enumerate() {
                    let v = b.matrix[(i, j)];
                    if v.norm() > floor {
                        out.push((*key, *l, *r, v));
                    }
                }
            }
        }
        out
    }

    /// Same trees, blocks replaced by `f(key, block)`.
    pub fn map_blocks(&self, mut f: impl FnMut(&BlockKey, &Block) -> CMatrix) -> SymbolTable {
        let blocks = self
            .blocks
            .iter()
            .map(|(k, b)| {
                let m = f(k, b);
                assert_eq!(m.shape(), b.matrix.shape());
                (*k, Block { left: b.left.clone(), right: b.right.clone(), matrix: m })
            })
            .collect();
        SymbolTable { blocks }
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.blocks.values().map(|b| crate::linalg::unitarity_defect(&b.matrix)).fold(0.0, f64::max)
    }
}
