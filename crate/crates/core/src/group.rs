//! Finite groups given by multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group with the identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// On-disk form of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Checks the group axioms and returns the validated group.
    pub fn validate(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {g} has length {} (expected {n})",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("row {g} has out-of-range entry {x}")));
            }
        }
        for (g, row) in table.iter().enumerate() {
            if table[0][g] != g || row[0] != g {
                return Err(Error::InvalidGroup(format!(
                    "index 0 is not an identity (fails at element {g})"
                )));
            }
        }
        for (g, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("row {g} not a permutation")));
                }
            }
        }
        for h in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[h]], true) {
                    return Err(Error::InvalidGroup(format!("column {h} not a permutation")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == 0 && table[h][g] == 0) {
                Some(h) => inv[g] = h,
                None => return Err(Error::InvalidGroup(format!("element {g} has no inverse"))),
            }
        }
        let mut grp = FiniteGroup {
            name: name.into(),
            table,
            inv,
            generators: Vec::new(),
            labels: None,
        };
        grp.generators = grp.greedy_generators();
        Ok(grp)
    }

    pub fn from_file(file: GroupFile) -> Result<Self> {
        if file.order != file.table.len() {
            return Err(Error::InvalidGroup(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        let mut g = Self::validate(file.name, file.table)?;
        if let Some(labels) = file.labels {
            if labels.len() != g.order() {
                return Err(Error::InvalidGroup("label count differs from order".into()));
            }
            g.labels = Some(labels);
        }
        Ok(g)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            order: self.order(),
            table: self.table.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The cyclic group of order `n`, element `k` being `x^k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = Self::validate(format!("C{n}"), table).expect("cyclic table is a group");
        g.labels = Some(
            (0..n)
                .map(|k| if k == 0 { "e".into() } else { format!("x^{k}") })
                .collect(),
        );
        g
    }

    /// `G x H`, pair `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (n, m) = (a.order(), b.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::validate(format!("{}x{}", a.name, b.name), table).expect("product of groups is a group")
    }

    /// Builtin groups by name: `C<n>` and products such as `C2xC2`.
    pub fn builtin(name: &str) -> Option<Self> {
        let mut parts = name
            .split('x')
            .map(|p| p.strip_prefix('C')?.parse::<usize>().ok().filter(|&n| n > 0));
        let mut g = Self::cyclic(parts.next()??);
        for p in parts {
            g = Self::direct_product(&g, &Self::cyclic(p?));
        }
        Some(g)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        for g in 1..n {
            if span[g] {
                continue;
            }
            gens.push(g);
            // closure of the span under the new generator
            let mut stack: Vec<usize> = (0..n).filter(|&x| span[x]).collect();
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !span[y] {
                        span[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// A generating set, chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, g: usize) -> String {
        self.labels.as_ref().map_or_else(|| format!("g{g}"), |l| l[g].clone())
    }

    /// True when the order is a power of `p`.
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }
}
