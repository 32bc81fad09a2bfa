use std::collections::BTreeSet;

use super::{CupError, LogicalCczTensor};

/// Tripartite hypergraph: vertex `(copy, index)`, one hyperedge per nonzero tensor entry.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InteractionHypergraph {
    pub counts: [usize; 3],
    /// Sorted lexicographically.
    pub edges: Vec<[usize; 3]>,
}

pub fn interaction_hypergraph(t: &LogicalCczTensor) -> InteractionHypergraph {
    InteractionHypergraph {
        counts: t.dims,
        edges: t.entries.iter().map(|&(a, b, c)| [a, b, c]).collect(),
    }
}

impl InteractionHypergraph {
    pub fn vertex_count(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Header `n1 n2 n3`, then one `a b c` line per hyperedge.
    pub fn write(&self) -> String {
        let [x, y, z] = self.counts;
        let mut out = format!("{x} {y} {z}\n");
        for [a, b, c] in &self.edges {
            out.push_str(&format!("{a} {b} {c}\n"));
        }
        out
    }

    pub fn read(text: &str) -> Result<Self, CupError> {
        let mut rows = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| {
                let v: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
                match v {
                    Ok(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
                    _ => Err(CupError::Parse {
                        line: i + 1,
                        message: "expected three integers".into(),
                    }),
                }
            });
        let counts = rows.next().unwrap_or(Ok([0; 3]))?;
        let mut edges = rows.collect::<Result<Vec<_>, _>>()?;
        if let Some(e) = edges.iter().find(|e| (0..3).any(|k| e[k] >= counts[k])) {
            return Err(CupError::Parse {
                line: 0,
                message: format!("hyperedge {e:?} outside the vertex counts"),
            });
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { counts, edges })
    }
}

/// Vertex label `(copy, index)`.
pub type Vertex = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FountainSchedule {
    /// Indices into the hypergraph's edge list.
    pub selected: Vec<usize>,
    pub plus: Vec<Vertex>,
    pub zero: Vec<Vertex>,
    pub magic_count: usize,
}

/// Greedy by hyperedge index: an edge is taken when none of its vertices is
/// already covered. Covered vertices go to `plus`, the rest to `zero`.
pub fn fountain_schedule(h: &InteractionHypergraph) -> FountainSchedule {
    greedy(h, false)
}

/// Greedy by hyperedge index keeping the selection induced: an edge is also
/// rejected when taking it would leave some unselected edge with all three
/// vertices in `plus`.
pub fn induced_fountain_schedule(h: &InteractionHypergraph) -> FountainSchedule {
    greedy(h, true)
}

fn greedy(h: &InteractionHypergraph, induced: bool) -> FountainSchedule {
    let mut used: Vec<Vec<bool>> = h.counts.iter().map(|&n| vec![false; n]).collect();
    let mut selected = Vec::new();
    for (i, e) in h.edges.iter().enumerate() {
        if (0..3).any(|k| used[k][e[k]]) {
            continue;
        }
        if induced {
            let covered = |k: usize, v: usize| used[k][v] || e[k] == v;
            let stray = h
                .edges
                .iter()
                .enumerate()
                .any(|(j, f)| j != i && !selected.contains(&j) && (0..3).all(|k| covered(k, f[k])));
            if stray {
                continue;
            }
        }
        for k in 0..3 {
            used[k][e[k]] = true;
        }
        selected.push(i);
    }
    let (mut plus, mut zero) = (Vec::new(), Vec::new());
    for (k, u) in used.iter().enumerate() {
        for (i, &covered) in u.iter().enumerate() {
            if covered {
                plus.push((k, i));
            } else {
                zero.push((k, i));
            }
        }
    }
    FountainSchedule {
        magic_count: selected.len(),
        selected,
        plus,
        zero,
    }
}

impl FountainSchedule {
    /// True when no two selected edges share a vertex, checked over all pairs.
    pub fn is_disjoint(&self, h: &InteractionHypergraph) -> bool {
        self.selected.iter().enumerate().all(|(n, &i)| {
            self.selected[n + 1..]
                .iter()
                .all(|&j| (0..3).all(|k| h.edges[i][k] != h.edges[j][k]))
        })
    }

    /// Unselected edges with all three vertices in `plus`; these stay active
    /// after the zero set is prepared in |0⟩.
    pub fn uncovered_edges(&self, h: &InteractionHypergraph) -> Vec<usize> {
        let plus: BTreeSet<Vertex> = self.plus.iter().copied().collect();
        let chosen: BTreeSet<usize> = self.selected.iter().copied().collect();
        (0..h.edges.len())
            .filter(|i| !chosen.contains(i) && (0..3).all(|k| plus.contains(&(k, h.edges[*i][k]))))
            .collect()
    }

    /// Two lines of `copy:index` labels (`plus ...`, `zero ...`), then `magic_count N`.
    pub fn write(&self) -> String {
        let fmt = |v: &[Vertex]| v.iter().map(|(k, i)| format!(" {k}:{i}")).collect::<String>();
        format!(
            "plus{}\nzero{}\nmagic_count {}\n",
            fmt(&self.plus),
            fmt(&self.zero),
            self.magic_count
        )
    }
}
