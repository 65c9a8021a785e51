//! Finite (multi)graphs with DOT and JSON output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    vertices: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Compact description of a graph for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub directed: bool,
    pub edges: usize,
    pub min_out_degree: usize,
    pub max_out_degree: usize,
    pub weakly_connected: bool,
    /// Out-neighbours of each vertex, with multiplicity.
    pub adjacency: BTreeMap<usize, Vec<usize>>,
}

impl Graph {
    pub fn new(
        vertices: usize,
        directed: bool,
        edges: Vec<(usize, usize)>,
        labels: Option<Vec<String>>,
    ) -> Result<Graph> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::BadParameters(format!(
                "edge ({a}, {b}) out of range for {vertices} vertices"
            )));
        }
        if labels.as_ref().is_some_and(|l| l.len() != vertices) {
            return Err(Error::BadParameters("one label per vertex required".into()));
        }
        Ok(Graph {
            vertices,
            directed,
            edges,
            labels,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Adjacency counts; undirected edges are entered in both directions.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut a = vec![vec![0u32; self.vertices]; self.vertices];
        for &(u, v) in &self.edges {
            a[u][v] += 1;
            if !self.directed && u != v {
                a[v][u] += 1;
            }
        }
        a
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.adjacency()
            .iter()
            .map(|row| row.iter().map(|&c| c as usize).sum())
            .collect()
    }

    pub fn is_weakly_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut nbrs = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &nbrs[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn summary(&self) -> GraphSummary {
        let degrees = self.out_degrees();
        let adj = self.adjacency();
        let adjacency = adj
            .iter()
            .enumerate()
            .map(|(u, row)| {
                let list = row
                    .iter()
                    .enumerate()
                    .flat_map(|(v, &c)| std::iter::repeat(v).take(c as usize))
                    .collect();
                (u, list)
            })
            .collect();
        GraphSummary {
            vertices: self.vertices,
            directed: self.directed,
            edges: self.edges.len(),
            min_out_degree: degrees.iter().copied().min().unwrap_or(0),
            max_out_degree: degrees.iter().copied().max().unwrap_or(0),
            weakly_connected: self.is_weakly_connected(),
            adjacency,
        }
    }

    pub fn to_dot(&self) -> String {
        let (kind, arrow) = if self.directed {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        let mut s = format!("{kind} G {{\n");
        for v in 0..self.vertices {
            match &self.labels {
                Some(l) => writeln!(s, "  {v} [label=\"{}\"];", l[v]).unwrap(),
                None => writeln!(s, "  {v};").unwrap(),
            }
        }
        for &(u, v) in &self.edges {
            writeln!(s, "  {u} {arrow} {v};").unwrap();
        }
        s.push('}');
        s.push('\n');
        s
    }
}
