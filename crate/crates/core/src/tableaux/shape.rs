use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A box of a diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(d)?;
        Ok(Self { row, col })
    }
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {x:?}"))))
        .collect()
}

fn write_parts(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    write!(f, "{}", s.join(","))
}

/// Prefix-sum comparison shared by partitions, compositions and tableaux.
pub(crate) fn dominates_parts(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for k in 0..a.len().max(b.len()) {
        sa += a.get(k).copied().unwrap_or(0);
        sb += b.get(k).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// A finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("composition with a zero part: {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn dominates(&self, other: &Self) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(dominates_parts(&self.parts, &other.parts))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(&self.parts, f)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_parts(s)?)
    }
}

/// A weakly decreasing sequence of positive integers; also its Young diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of non-empty rows.
    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of row `r` (1-based), zero past the last row.
    pub fn row_len(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.parts.get(r - 1).copied().unwrap_or(0)
    }

    pub fn as_composition(&self) -> Composition {
        Composition { parts: self.parts.clone() }
    }

    pub fn contains(&self, node: Node) -> bool {
        node.row >= 1 && node.col >= 1 && node.col <= self.row_len(node.row)
    }

    /// Nodes in row-reading order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 1..=len {
                out.push(Node::new(r + 1, c));
            }
        }
        out
    }

    pub fn dominates(&self, other: &Self) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(dominates_parts(&self.parts, &other.parts))
    }

    /// Dominates and differs.
    pub fn strictly_dominates(&self, other: &Self) -> bool {
        self != other && self.size() == other.size() && dominates_parts(&self.parts, &other.parts)
    }

    /// All partitions of `n`, in reverse lexicographic order (so `(n)`
    /// first); this order extends dominance.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Removable nodes listed from the bottom row to the top row.
    pub fn removable_nodes(&self) -> Vec<Node> {
        let rows = self.num_rows();
        (1..=rows)
            .rev()
            .filter(|&r| self.row_len(r) > self.row_len(r + 1))
            .map(|r| Node::new(r, self.row_len(r)))
            .collect()
    }

    /// Addable nodes listed from the top row to the bottom row.
    pub fn addable_nodes(&self) -> Vec<Node> {
        (1..=self.num_rows() + 1)
            .filter(|&r| r == 1 || self.row_len(r - 1) > self.row_len(r))
            .map(|r| Node::new(r, self.row_len(r) + 1))
            .collect()
    }

    pub fn remove(&self, node: Node) -> Result<Self> {
        if !self.removable_nodes().contains(&node) {
            return Err(Error::NotRemovable { shape: self.to_string(), row: node.row, col: node.col });
        }
        let mut parts = self.parts.clone();
        parts[node.row - 1] -= 1;
        if parts[node.row - 1] == 0 {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn add(&self, node: Node) -> Result<Self> {
        if !self.addable_nodes().contains(&node) {
            return Err(Error::NotAddable { shape: self.to_string(), row: node.row, col: node.col });
        }
        let mut parts = self.parts.clone();
        if node.row > parts.len() {
            parts.push(1);
        } else {
            parts[node.row - 1] += 1;
        }
        Ok(Self { parts })
    }

    /// Entry of the superstandard tableau at `node`.
    pub fn superstandard_entry(&self, node: Node) -> usize {
        self.parts[..node.row - 1].iter().sum::<usize>() + node.col
    }

    /// Positions `(i, j)` such that `(i + 1, j)` is also a node.
    pub fn garnir_positions(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for i in 1..self.num_rows() {
            for j in 1..=self.row_len(i + 1) {
                out.push(Node::new(i, j));
            }
        }
        out
    }

    /// Nodes of the `(i, j)` Garnir strip: row `i` from column `j` rightwards
    /// and row `i + 1` up to column `j`.
    pub fn garnir_strip(&self, pos: Node) -> Result<Vec<Node>> {
        if !self.contains(pos) || !self.contains(Node::new(pos.row + 1, pos.col)) {
            return Err(Error::InvalidGarnirPosition { shape: self.to_string(), row: pos.row, col: pos.col });
        }
        let mut out: Vec<Node> = (1..=pos.col).map(|c| Node::new(pos.row + 1, c)).collect();
        out.extend((pos.col..=self.row_len(pos.row)).map(|c| Node::new(pos.row, c)));
        Ok(out)
    }

    fn hook(&self, node: Node) -> usize {
        let arm = self.row_len(node.row) - node.col;
        let leg = (node.row + 1..=self.num_rows()).filter(|&r| self.row_len(r) >= node.col).count();
        arm + leg + 1
    }

    /// Number of standard tableaux by the hook length formula.
    pub fn hook_length_count(&self) -> u64 {
        let num: u128 = (1..=self.size() as u128).product();
        let den: u128 = self.nodes().into_iter().map(|x| self.hook(x) as u128).product();
        (num / den) as u64
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reverse lexicographic: larger partitions (in the dominance-extending
/// sense) sort first.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(&self.parts, f)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_parts(s)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dominance() {
        assert!(lam("3,2").dominates(&lam("3,1,1")).unwrap());
        assert!(lam("2,2,1").dominates(&lam("2,2,1")).unwrap());
        assert!(!lam("2,2,1").dominates(&lam("3,1,1")).unwrap());
        assert_eq!(lam("2").dominates(&lam("2,1")), Err(Error::SizeMismatch(2, 3)));
    }

    #[test]
    fn enumeration_order() {
        let all: Vec<String> = Partition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(all, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(Partition::all(0), vec![Partition::empty()]);
        assert_eq!(Partition::all(8).len(), 22);
        // Reverse lex extends dominance.
        let ps = Partition::all(6);
        for (i, a) in ps.iter().enumerate() {
            for b in &ps[..i] {
                assert!(!a.strictly_dominates(b));
            }
        }
    }

    #[test]
    fn nodes() {
        let l = lam("3,2,1");
        assert_eq!(l.removable_nodes(), vec![Node::new(3, 1), Node::new(2, 2), Node::new(1, 3)]);
        assert_eq!(l.addable_nodes().len(), l.removable_nodes().len() + 1);
        assert_eq!(l.remove(Node::new(3, 1)).unwrap(), lam("3,2"));
        assert!(l.remove(Node::new(2, 1)).is_err());
        assert_eq!(l.add(Node::new(4, 1)).unwrap(), lam("3,2,1,1"));
        assert!(matches!(l.add(Node::new(3, 3)), Err(Error::NotAddable { .. })));
        assert_eq!(Partition::empty().addable_nodes(), vec![Node::new(1, 1)]);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(lam("3").hook_length_count(), 1);
        assert_eq!(lam("2,1").hook_length_count(), 2);
        assert_eq!(lam("3,2,1").hook_length_count(), 16);
        assert_eq!(lam("4,3,2,1").hook_length_count(), 768);
    }

    #[test]
    fn garnir_strips() {
        let l = lam("3,2,1");
        assert_eq!(l.garnir_positions(), vec![Node::new(1, 1), Node::new(1, 2), Node::new(2, 1)]);
        assert_eq!(l.garnir_strip(Node::new(1, 2)).unwrap().len(), 4);
        assert!(matches!(l.garnir_strip(Node::new(1, 3)), Err(Error::InvalidGarnirPosition { .. })));
    }
}
