use std::path::Path;
use std::sync::Arc;

use crate::error::Result;
use crate::ground::GroundSet;
use crate::oracle::{Independence, OracleSession};
use crate::representations::io;
use crate::representations::{BinaryRep, GraphRep, UniformRep};

/// Where an instance's independence predicate comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Binary(BinaryRep),
    Graph(GraphRep),
    Uniform(UniformRep),
}

/// A named matroid ready to be wrapped in a session.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub ground: GroundSet,
    pub source: Source,
}

impl Instance {
    pub fn binary(rep: BinaryRep, ground: GroundSet) -> Result<Self> {
        if rep.cols() != ground.len() {
            return Err(crate::MatroidError::Domain(format!(
                "{} columns but {} names",
                rep.cols(),
                ground.len()
            )));
        }
        Ok(Instance {
            ground,
            source: Source::Binary(rep),
        })
    }

    pub fn graph(g: GraphRep) -> Self {
        Instance {
            ground: g.ground(),
            source: Source::Graph(g),
        }
    }

    /// Uniform matroid with elements named `a, b, c, ...`.
    pub fn uniform(u: UniformRep) -> Result<Self> {
        Ok(Instance {
            ground: GroundSet::lettered(u.n())?,
            source: Source::Uniform(u),
        })
    }

    pub fn backend(&self) -> Arc<dyn Independence> {
        match &self.source {
            Source::Binary(b) => Arc::new(b.clone()),
            Source::Graph(g) => Arc::new(g.clone()),
            Source::Uniform(u) => Arc::new(*u),
        }
    }

    pub fn session(&self) -> OracleSession {
        OracleSession::new(self.ground.clone(), self.backend()).expect("sizes agree by construction")
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn as_graph(&self) -> Option<&GraphRep> {
        match &self.source {
            Source::Graph(g) => Some(g),
            _ => None,
        }
    }

    /// The instance in its native file format.
    pub fn to_text(&self) -> String {
        match &self.source {
            Source::Binary(b) => io::write_binary(b, &self.ground),
            Source::Graph(g) => io::write_graph(g),
            Source::Uniform(u) => io::write_uniform(u),
        }
    }

    /// File extension matching [`Instance::to_text`].
    pub fn extension(&self) -> &'static str {
        match &self.source {
            Source::Binary(_) => "bm",
            Source::Graph(_) => "graph",
            Source::Uniform(_) => "uniform",
        }
    }

    pub fn load_binary(path: &Path) -> Result<Self> {
        let (rep, ground) = io::parse_binary(&std::fs::read_to_string(path)?)?;
        Instance::binary(rep, ground)
    }

    pub fn load_graph(path: &Path) -> Result<Self> {
        Ok(Instance::graph(io::parse_graph(&std::fs::read_to_string(path)?)?))
    }

    /// `spec` is either `n,r` or a path to a file containing it.
    pub fn load_uniform(spec: &str) -> Result<Self> {
        let text = if spec.contains(',') {
            spec.to_string()
        } else {
            std::fs::read_to_string(spec)?
        };
        Instance::uniform(io::parse_uniform(&text)?)
    }
}
