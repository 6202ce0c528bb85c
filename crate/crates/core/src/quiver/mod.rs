//! Quivers, paths, the path algebra and typed matrices over it.

mod path;
pub mod samples;
mod typed;

use std::collections::VecDeque;
use std::fmt;

pub use path::{AlgebraElement, Path};
pub use typed::TypedMatrix;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

/// A finite quiver with ordered, uniquely named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// Arrows are given as `(name, source, target)` by vertex name.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidQuiver(format!("bad vertex name `{v}`")));
            }
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
        };
        for (name, s, t) in arrows {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::InvalidQuiver(format!("bad arrow name `{name}`")));
            }
            if q.arrows.iter().any(|a| a.name == name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            if q.vertices.iter().any(|v| v == name) {
                return Err(Error::InvalidQuiver(format!("`{name}` names both a vertex and an arrow")));
            }
            let src = q.vertex(s.as_ref())?;
            let tgt = q.vertex(t.as_ref())?;
            q.arrows.push(Arrow {
                name: name.to_string(),
                src,
                tgt,
            });
        }
        Ok(q)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(VertexId)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrowId> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .map(ArrowId)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.src == v)
            .map(|(i, _)| ArrowId(i))
    }

    /// A directed cycle (vertex names, first repeated at the end), if any.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertices.len();
        let mut state = vec![0u8; n];
        let mut stack: Vec<usize> = Vec::new();
        fn dfs(q: &Quiver, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for a in q.out_arrows(VertexId(v)) {
                let w = q.arrows[a.0].tgt.0;
                if state[w] == 1 {
                    let start = stack.iter().position(|&x| x == w).expect("on stack");
                    let mut cyc = stack[start..].to_vec();
                    cyc.push(w);
                    return Some(cyc);
                }
                if state[w] == 0 {
                    if let Some(c) = dfs(q, w, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        for v in 0..n {
            if state[v] == 0 {
                if let Some(c) = dfs(self, v, &mut state, &mut stack) {
                    return Some(c.into_iter().map(|i| self.vertices[i].clone()).collect());
                }
            }
        }
        None
    }

    /// Kahn's algorithm; loops count as cycles.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt.0] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.out_arrows(VertexId(v)) {
                let w = self.arrows[a.0].tgt.0;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == n
    }

    pub fn require_acyclic(&self) -> Result<()> {
        match self.find_cycle() {
            Some(cycle) => Err(Error::CyclicQuiverUnsupported { cycle }),
            None => Ok(()),
        }
    }

    /// All paths starting at `s`, ordered by length then arrow sequence.
    pub fn paths_from(&self, s: VertexId) -> Result<Vec<Path>> {
        self.require_acyclic()?;
        let mut out = vec![Path::trivial(s)];
        let mut frontier = vec![Path::trivial(s)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.out_arrows(p.tgt()) {
                    next.push(p.then_arrow(self, a).expect("composable by construction"));
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// All paths from `s` to `t`, ordered by length then arrow sequence.
    pub fn path_basis(&self, s: VertexId, t: VertexId) -> Result<Vec<Path>> {
        Ok(self.paths_from(s)?.into_iter().filter(|p| p.tgt() == t).collect())
    }

    /// Dimension of the path algebra (acyclic quivers only).
    pub fn path_algebra_dim(&self) -> Result<usize> {
        let mut total = 0;
        for s in self.vertex_ids() {
            total += self.paths_from(s)?.len();
        }
        Ok(total)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices [{}]; arrows [", self.vertices.join(", "))?;
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, self.vertices[a.src.0], self.vertices[a.tgt.0]))
            .collect();
        write!(f, "{}]", arrows.join(", "))
    }
}
