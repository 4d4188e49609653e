use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::shape::dominates_parts;
use super::{Node, Partition};
use crate::error::{Error, Result};
use crate::symgroup::Permutation;

/// A bijective filling of a Young diagram by `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
    shape: Partition,
}

impl Tableau {
    /// Rows must have partition shape and contain each of `1..=n` once.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())
            .map_err(|_| Error::InvalidTableau(format!("{rows:?} does not have partition shape")))?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidTableau(format!("{rows:?} is not a filling by 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Self { rows, shape })
    }

    /// The row-reading tableau `t^lambda`.
    pub fn superstandard(shape: &Partition) -> Self {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Self { rows, shape: shape.clone() }
    }

    /// `t^lambda` acted on by `w`.
    pub fn from_word(shape: &Partition, w: &Permutation) -> Result<Self> {
        Self::superstandard(shape).act(w)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn entry(&self, node: Node) -> Option<usize> {
        self.rows.get(node.row.checked_sub(1)?)?.get(node.col.checked_sub(1)?).copied()
    }

    /// Node holding the entry `m`.
    pub fn node_of(&self, m: usize) -> Option<Node> {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&x| x == m) {
                return Some(Node::new(r + 1, c + 1));
            }
        }
        None
    }

    /// Row containing the entry `m`.
    pub fn row_of(&self, m: usize) -> Option<usize> {
        self.node_of(m).map(|x| x.row)
    }

    /// Row index of every entry, `rows[m - 1] = row_t(m)`.
    pub fn row_sequence(&self) -> Vec<usize> {
        let mut out = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for &x in row {
                out[x - 1] = r + 1;
            }
        }
        out
    }

    /// Replaces every entry `k` by `k^w`.
    pub fn act(&self, w: &Permutation) -> Result<Self> {
        if w.degree() != self.size() {
            return Err(Error::DegreeMismatch(self.size(), w.degree()));
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|&x| w.image(x)).collect()).collect();
        Ok(Self { rows, shape: self.shape.clone() })
    }

    /// The permutation `w(t)` with `t = t^lambda w(t)`.
    pub fn word(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        let mut next = 0;
        for row in &self.rows {
            for &x in row {
                images[next] = x;
                next += 1;
            }
        }
        Permutation::from_images(&images).expect("tableau entries form a permutation")
    }

    pub fn is_row_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard()
            && self.rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(lo, hi)| hi < lo))
    }

    /// `t` with `n + 1` placed at the addable node `alpha`.
    pub fn adjoin(&self, alpha: Node) -> Result<Self> {
        let shape = self.shape.add(alpha)?;
        let mut rows = self.rows.clone();
        if alpha.row > rows.len() {
            rows.push(Vec::new());
        }
        rows[alpha.row - 1].push(self.size() + 1);
        Ok(Self { rows, shape })
    }

    /// Deletes the entries `k + 1, ..., n`; the remainder must still have
    /// partition shape, which holds whenever `t` is standard.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        let n = self.size();
        if k == 0 || k >= n {
            return Err(Error::BadRestrictionIndex { k, n });
        }
        let mut rows: Vec<Vec<usize>> =
            self.rows.iter().map(|r| r.iter().copied().filter(|&x| x <= k).collect()).collect();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Self::new(rows)
    }

    /// Nodes occupied by the entries `1..=k`, in row-reading order.
    pub fn shape_below(&self, k: usize) -> Vec<Node> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x <= k {
                    out.push(Node::new(r + 1, c + 1));
                }
            }
        }
        out
    }

    fn row_counts_below(&self, k: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().filter(|&&x| x <= k).count()).collect()
    }

    /// Dominance of row-standard tableaux: for every `k` the row counts of
    /// the entries `1..=k` of `self` dominate those of `other`.
    pub fn dominates(&self, other: &Self) -> Result<bool> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(self.shape.to_string(), other.shape.to_string()));
        }
        Ok((1..=self.size()).all(|k| dominates_parts(&self.row_counts_below(k), &other.row_counts_below(k))))
    }

    pub fn strictly_dominates(&self, other: &Self) -> Result<bool> {
        Ok(self != other && self.dominates(other)?)
    }

    /// Key of a linear extension of tableau dominance: sorting ascending
    /// puts more dominant tableaux first.
    pub fn dominance_key(&self) -> Vec<usize> {
        self.row_sequence()
    }

    /// The `(i, j)` Garnir tableau of `shape`.
    pub fn garnir(shape: &Partition, pos: Node) -> Result<Self> {
        let strip = shape.garnir_strip(pos)?;
        let mut t = Self::superstandard(shape);
        let a = shape.superstandard_entry(pos);
        for (k, node) in strip.iter().enumerate() {
            t.rows[node.row - 1][node.col - 1] = a + k;
        }
        Ok(t)
    }

    /// True when `self` and `other` have equal entries at every node not in
    /// `nodes`.
    pub fn agrees_outside(&self, other: &Self, nodes: &[Node]) -> bool {
        self.shape == other.shape
            && self.shape.nodes().into_iter().filter(|x| !nodes.contains(x)).all(|x| self.entry(x) == other.entry(x))
    }
}

fn enumerate(shape: &Partition, standard: bool) -> Vec<Tableau> {
    fn rec(shape: &Partition, standard: bool, k: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if k > shape.size() {
            out.push(Tableau { rows: rows.clone(), shape: shape.clone() });
            return;
        }
        for r in 0..rows.len() {
            let len = rows[r].len();
            if len < shape.parts()[r] && (!standard || r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(shape, standard, k + 1, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, standard, 1, &mut vec![Vec::new(); shape.num_rows()], &mut out);
    out
}

/// Standard tableaux of `shape`, most dominant first.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    enumerate(shape, true)
}

/// Row-standard tableaux of `shape`, most dominant first.
pub fn row_standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    enumerate(shape, false)
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shape (reverse lexicographic), then the dominance linear extension.
impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.shape.cmp(&other.shape).then_with(|| self.dominance_key().cmp(&other.dominance_key()))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau{self}")
    }
}

impl FromStr for Tableau {
    type Err = Error;

    /// `"[[1,2],[3]]"` or the compact `"12/3"` (single-digit entries).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let rows: Vec<Vec<usize>> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::new(rows);
        }
        let rows = s
            .split('/')
            .map(|r| {
                r.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad tableau {s:?}"))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(rows)
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        Self::new(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn tab(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    #[test]
    fn superstandard_and_words() {
        assert_eq!(Tableau::superstandard(&lam("3,2,1")), tab("123/45/6"));
        assert_eq!(Tableau::superstandard(&lam("2,2")), tab("12/34"));
        assert!(Tableau::superstandard(&lam("3,2,1")).word().is_identity());
        let t = tab("13/2");
        assert_eq!(t.word().to_string(), "1,3,2");
        assert_eq!(Tableau::from_word(t.shape(), &t.word()).unwrap(), t);
    }

    #[test]
    fn counts_match_hook_formula() {
        for n in 1..=7 {
            for l in Partition::all(n) {
                let std = standard_tableaux(&l);
                assert_eq!(std.len() as u64, l.hook_length_count());
                assert!(std.iter().all(|t| t.is_standard()));
            }
        }
        assert_eq!(standard_tableaux(&lam("3,2,1")).len(), 16);
        assert_eq!(row_standard_tableaux(&lam("2,1")).len(), 3);
    }

    #[test]
    fn garnir_examples() {
        let l = lam("3,2,1");
        assert_eq!(Tableau::garnir(&l, Node::new(1, 1)).unwrap(), tab("234/15/6"));
        assert_eq!(Tableau::garnir(&l, Node::new(2, 1)).unwrap(), tab("123/56/4"));
        assert_eq!(Tableau::garnir(&l, Node::new(1, 2)).unwrap(), tab("145/23/6"));
        let g = Tableau::garnir(&l, Node::new(1, 1)).unwrap();
        assert!(g.is_row_standard() && !g.is_standard());
    }

    #[test]
    fn node_operations() {
        let t = tab("12/3");
        assert_eq!(t.adjoin(Node::new(1, 3)).unwrap(), tab("124/3"));
        assert_eq!(t.adjoin(Node::new(1, 3)).unwrap().restrict(3).unwrap(), t);
        assert!(t.adjoin(Node::new(2, 3)).is_err());
        assert_eq!(Tableau::superstandard(&lam("3,2,1")).restrict(3).unwrap(), tab("123"));
        assert_eq!(t.restrict(3), Err(Error::BadRestrictionIndex { k: 3, n: 3 }));
        assert_eq!(t.row_of(3), Some(2));
        assert_eq!(t.node_of(2), Some(Node::new(1, 2)));
        assert_eq!(t.shape_below(2), vec![Node::new(1, 1), Node::new(1, 2)]);
    }

    #[test]
    fn dominance_order() {
        for n in 1..=5 {
            for l in Partition::all(n) {
                let rs = row_standard_tableaux(&l);
                let top = Tableau::superstandard(&l);
                for s in &rs {
                    assert!(top.dominates(s).unwrap());
                    assert!(s.dominates(s).unwrap());
                    for t in &rs {
                        if s != t && s.dominates(t).unwrap() {
                            assert!(!t.dominates(s).unwrap());
                            assert!(s.dominance_key() < t.dominance_key());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn garnir_neighbourhood() {
        // Standard tableaux strictly above g are exactly the standard ones
        // agreeing with t^lambda outside the strip.
        for n in 2..=6 {
            for l in Partition::all(n) {
                let top = Tableau::superstandard(&l);
                for pos in l.garnir_positions() {
                    let g = Tableau::garnir(&l, pos).unwrap();
                    let strip = l.garnir_strip(pos).unwrap();
                    for t in row_standard_tableaux(&l) {
                        let agrees = t.agrees_outside(&top, &strip);
                        if agrees && t != g {
                            assert!(t.is_standard());
                        }
                        if t.is_standard() {
                            assert_eq!(agrees, t.strictly_dominates(&g).unwrap());
                        }
                    }
                }
            }
        }
    }
}
