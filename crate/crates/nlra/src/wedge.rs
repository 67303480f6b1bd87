//! Alternating multi-index combinatorics: canonical bases of `∧^k L`,
//! signed sorting, and block-wise canonicalization for cochain storage.

use std::collections::BTreeMap;

use crate::error::Error;

/// Strictly increasing list of 0-based basis indices, a canonical basis
/// label of `∧^k L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<usize>,
    ambient_dim: usize,
}

impl MultiIndex {
    pub fn new(indices: Vec<usize>, ambient_dim: usize) -> Result<Self, Error> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::MalformedGrouping(format!(
                    "indices {indices:?} are not strictly increasing"
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= ambient_dim {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    dim: ambient_dim,
                });
            }
        }
        Ok(MultiIndex {
            indices,
            ambient_dim,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Result of alternating canonicalization: sign zero exactly when the
/// tuple had a repeated index (and then there is no canonical form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIndex {
    pub sign: i32,
    pub canonical: Option<MultiIndex>,
}

/// Sort a tuple into its canonical multi-index, tracking the parity of the
/// sorting permutation; a repeated index collapses to sign zero.
pub fn canonical_index(tuple: &[usize], ambient_dim: usize) -> Result<SignedIndex, Error> {
    for &i in tuple {
        if i >= ambient_dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: ambient_dim,
            });
        }
    }
    let (sign, sorted) = sort_sign(tuple);
    if sign == 0 {
        return Ok(SignedIndex {
            sign: 0,
            canonical: None,
        });
    }
    Ok(SignedIndex {
        sign,
        canonical: Some(MultiIndex::new(sorted, ambient_dim)?),
    })
}

/// Insertion sort with transposition counting; small tuples only.
pub(crate) fn sort_sign(tuple: &[usize]) -> (i32, Vec<usize>) {
    let mut v = tuple.to_vec();
    let mut sign = 1i32;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, v);
    }
    (sign, v)
}

/// All strictly increasing k-tuples in `0..d`, in lexicographic order;
/// empty when `k > d`.
pub fn enumerate_blocks(d: usize, k: usize) -> Vec<MultiIndex> {
    if k > d {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(MultiIndex::new(cur.clone(), d).expect("increasing by construction"));
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + d - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Canonicalize a cochain argument tuple block by block: each block is
/// sorted with its sign accumulated, blocks are never reordered among
/// themselves, and the trailing singleton is left untouched (it may repeat
/// a block entry). Sign zero when some block has an internal repeat.
pub fn block_canonicalize(
    blocks: &[Vec<usize>],
    singleton: usize,
    block_size: usize,
    ambient_dim: usize,
) -> Result<(i32, Vec<MultiIndex>, usize), Error> {
    if singleton >= ambient_dim {
        return Err(Error::IndexOutOfRange {
            index: singleton,
            dim: ambient_dim,
        });
    }
    let mut sign = 1i32;
    let mut canon = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.len() != block_size {
            return Err(Error::MalformedGrouping(format!(
                "block {b:?} has size {} but expected {block_size}",
                b.len()
            )));
        }
        let s = canonical_index(b, ambient_dim)?;
        sign *= s.sign;
        if sign == 0 {
            return Ok((0, Vec::new(), singleton));
        }
        canon.push(s.canonical.expect("nonzero sign has canonical form"));
    }
    Ok((sign, canon, singleton))
}

/// Canonical ordered basis of `∧^k` of a d-dimensional space, with a
/// position lookup. Shared by the fundamental bracket, anchors, and the
/// cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    dim: usize,
    k: usize,
    blocks: Vec<MultiIndex>,
    position: BTreeMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(dim: usize, k: usize) -> Self {
        let blocks = enumerate_blocks(dim, k);
        let position = blocks
            .iter()
            .enumerate()
            .map(|(p, b)| (b.indices().to_vec(), p))
            .collect();
        WedgeBasis {
            dim,
            k,
            blocks,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, pos: usize) -> &MultiIndex {
        &self.blocks[pos]
    }

    pub fn blocks(&self) -> &[MultiIndex] {
        &self.blocks
    }

    pub fn position_of(&self, m: &MultiIndex) -> usize {
        self.position[m.indices()]
    }

    /// Signed position of an arbitrary tuple: `None` on repeats.
    pub fn canonical_position(&self, tuple: &[usize]) -> Option<(i32, usize)> {
        let (sign, sorted) = sort_sign(tuple);
        if sign == 0 {
            return None;
        }
        Some((sign, self.position[&sorted]))
    }
}

/// C(n, k) as usize; desk-scale arguments only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}
