//! Finite groups as validated Cayley tables, with derived series and
//! solvability.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::WordsError;

/// Multiplication table of a finite group. Element `0` is the unit;
/// construction checks closure, the identity row and column, the latin
/// square property, and associativity over all triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, WordsError> {
        let n = rows.len();
        if n == 0 {
            return Err(WordsError::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(WordsError::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(WordsError::InvalidTable(format!(
                        "entry ({i},{j}) = {v} is out of range"
                    )));
                }
                table.push(v);
            }
        }

        for j in 0..n {
            if table[j] != j {
                return Err(WordsError::InvalidTable(format!(
                    "element 0 is not a left identity at column {j}"
                )));
            }
        }
        for i in 0..n {
            if table[i * n] != i {
                return Err(WordsError::InvalidTable(format!(
                    "element 0 is not a right identity at row {i}"
                )));
            }
        }

        // Latin square: each row and column is a permutation.
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] {
                    return Err(WordsError::InvalidTable(format!(
                        "row {i} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let v = table[i * n + j];
                if seen[v] {
                    return Err(WordsError::InvalidTable(format!(
                        "column {j} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    let bc = table[b * n + c];
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(WordsError::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }

        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b;
                }
            }
        }
        if inverses.iter().any(|&v| v == usize::MAX) {
            return Err(WordsError::InvalidTable("an element has no inverse".into()));
        }

        Ok(CayleyTable {
            order: n,
            table,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Cyclic group of order `n`, elements as residues.
    pub fn cyclic(n: usize) -> CayleyTable {
        assert!(n >= 1);
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        CayleyTable::new(rows).expect("cyclic construction is a group")
    }

    /// Symmetric group on `n` letters; elements are the permutations of
    /// `0..n` in lexicographic one-line order, so the unit comes first.
    pub fn symmetric(n: usize) -> CayleyTable {
        let perms = permutations(n);
        CayleyTable::from_permutations(&perms)
    }

    /// Alternating group on `n` letters, lexicographic one-line order.
    pub fn alternating(n: usize) -> CayleyTable {
        let perms: Vec<Vec<usize>> = permutations(n)
            .into_iter()
            .filter(|p| parity(p) == 0)
            .collect();
        CayleyTable::from_permutations(&perms)
    }

    fn from_permutations(perms: &[Vec<usize>]) -> CayleyTable {
        let index_of = |p: &[usize]| -> usize {
            perms
                .iter()
                .position(|q| q == p)
                .expect("closed under composition")
        };
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // Composition acts right to left: (a b)(x) = a(b(x)).
                        let composed: Vec<usize> = (0..a.len()).map(|x| a[b[x]]).collect();
                        index_of(&composed)
                    })
                    .collect()
            })
            .collect();
        CayleyTable::new(rows).expect("permutation composition is a group")
    }

    /// Subgroup generated by all commutators of elements of `sub`.
    fn derived_subgroup(&self, sub: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut gens = BTreeSet::new();
        gens.insert(self.identity());
        for &x in sub {
            for &y in sub {
                let c = self.product(
                    self.product(x, y),
                    self.product(self.inverse(x), self.inverse(y)),
                );
                gens.insert(c);
            }
        }
        // Closure under products; in a finite group that already yields
        // a subgroup.
        let mut closed = gens;
        loop {
            let mut added = Vec::new();
            for &a in &closed {
                for &b in &closed {
                    let p = self.product(a, b);
                    if !closed.contains(&p) {
                        added.push(p);
                    }
                }
            }
            if added.is_empty() {
                return closed;
            }
            closed.extend(added);
        }
    }

    /// Descending derived series starting at the whole group, stopping
    /// when it stabilizes. A repeated final entry exhibits a perfect
    /// subgroup; a final singleton means the group is solvable.
    pub fn derived_series(&self) -> Vec<BTreeSet<usize>> {
        let full: BTreeSet<usize> = (0..self.order).collect();
        let mut series = vec![full];
        loop {
            let last = series.last().expect("series is nonempty");
            let next = self.derived_subgroup(last);
            if next == *last {
                if last.len() > 1 {
                    series.push(next);
                }
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series()
            .last()
            .map(|s| s.len() == 1)
            .unwrap_or(false)
    }

    /// Parses the plain-text table format: first line the order, then one
    /// line per row of space-separated element indices.
    pub fn parse(text: &str) -> Result<CayleyTable, WordsError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| WordsError::InvalidTable("missing order line".into()))?
            .parse()
            .map_err(|_| WordsError::InvalidTable("order line is not a number".into()))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| WordsError::InvalidTable(format!("expected {n} rows")))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| WordsError::InvalidTable(format!("bad entry '{tok}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(WordsError::InvalidTable("trailing rows after table".into()));
        }
        CayleyTable::new(rows)
    }

    /// Inverse of [`CayleyTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self.product(i, j));
            }
            out.push('\n');
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                go(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

fn parity(perm: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}
