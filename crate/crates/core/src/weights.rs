//! Element weights and the deterministic `(weight, index)` order used everywhere.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Num, ToPrimitive};

use crate::error::{MatroidError, Result};
use crate::ground::{ElementId, ElementSet, GroundSet};

/// Scalar usable as an element weight.
///
/// Implemented for every numeric type with a partial order, so `f64`, `f32`,
/// integers and exact rationals all work.
pub trait Weight: Num + PartialOrd + Copy + Debug + Display + ToPrimitive + Send + Sync {}

impl<T> Weight for T where T: Num + PartialOrd + Copy + Debug + Display + ToPrimitive + Send + Sync {}

/// Weight of every element of a ground set, indexed by element index.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMap<W> {
    values: Vec<W>,
}

/// Outcome of [`validate_weights`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightCheck {
    Ok,
    /// Pairs of distinct elements sharing a weight, lower index first.
    Duplicates(Vec<(ElementId, ElementId)>),
}

impl<W: Weight> WeightMap<W> {
    /// Weights in element-index order. NaN-like values (not comparable with
    /// themselves) are rejected.
    pub fn new(values: Vec<W>) -> Result<Self> {
        for (i, w) in values.iter().enumerate() {
            if w.partial_cmp(w).is_none() {
                return Err(MatroidError::InvalidWeight {
                    name: format!("#{i}"),
                    reason: "weight is not comparable".into(),
                });
            }
        }
        Ok(WeightMap { values })
    }

    /// Builds a map from `(name, weight)` pairs; every ground element must be covered.
    pub fn from_pairs<S: AsRef<str>>(ground: &GroundSet, pairs: &[(S, W)]) -> Result<Self> {
        let mut values: Vec<Option<W>> = vec![None; ground.len()];
        for (name, w) in pairs {
            let id = ground.id(name.as_ref()).ok_or_else(|| MatroidError::InvalidWeight {
                name: name.as_ref().to_string(),
                reason: "not an element of the ground set".into(),
            })?;
            if values[id.0].is_some() {
                return Err(MatroidError::InvalidWeight {
                    name: name.as_ref().to_string(),
                    reason: "weight given twice".into(),
                });
            }
            values[id.0] = Some(*w);
        }
        let missing: Vec<usize> = (0..ground.len()).filter(|&i| values[i].is_none()).collect();
        if let Some(&first) = missing.first() {
            return Err(MatroidError::IncompleteWeights {
                missing: missing.len(),
                first: ground.names()[first].clone(),
            });
        }
        WeightMap::new(values.into_iter().map(Option::unwrap).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: usize) -> W {
        self.values[id]
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    /// Total order on elements: by weight, then by index.
    pub fn cmp_elements(&self, a: usize, b: usize) -> Ordering {
        self.values[a]
            .partial_cmp(&self.values[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    }

    /// Elements of `set` sorted by the `(weight, index)` order.
    pub fn sorted(&self, set: ElementSet) -> Vec<usize> {
        let mut v = set.to_vec();
        v.sort_by(|&a, &b| self.cmp_elements(a, b));
        v
    }

    pub fn total(&self, set: ElementSet) -> W {
        set.iter().fold(W::zero(), |acc, i| acc + self.values[i])
    }

    /// Maps every weight through `f`, e.g. to switch scalar type.
    pub fn map<V: Weight>(&self, f: impl Fn(W) -> V) -> Result<WeightMap<V>> {
        WeightMap::new(self.values.iter().map(|&w| f(w)).collect())
    }
}

impl<W: Weight> WeightMap<W> {
    /// `w(e_i) = i` (1-based), the weighting used by most fixtures.
    pub fn by_index(n: usize) -> Self
    where
        W: num_traits::FromPrimitive,
    {
        WeightMap {
            values: (1..=n).map(|i| W::from_usize(i).expect("weight in range")).collect(),
        }
    }
}

/// The unique minimiser of `(w(x), index(x))` over a nonempty set.
pub fn argmin_weight<W: Weight>(set: ElementSet, w: &WeightMap<W>) -> Result<ElementId> {
    set.iter()
        .min_by(|&a, &b| w.cmp_elements(a, b))
        .map(ElementId)
        .ok_or_else(|| MatroidError::Domain("argmin over an empty set".into()))
}

/// Checks that `w` covers `ground` and reports every colliding pair.
pub fn validate_weights<W: Weight>(w: &WeightMap<W>, ground: &GroundSet) -> Result<WeightCheck> {
    if w.len() < ground.len() {
        return Err(MatroidError::IncompleteWeights {
            missing: ground.len() - w.len(),
            first: ground.names()[w.len()].clone(),
        });
    }
    if w.len() > ground.len() {
        return Err(MatroidError::Domain(format!(
            "{} weights for a ground set of {}",
            w.len(),
            ground.len()
        )));
    }
    let order = w.sorted(ground.full());
    let mut dups = Vec::new();
    // Equal weights are adjacent in sorted order; collect every pair within a run.
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && w.get(order[end]) == w.get(order[start]) {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                let (a, b) = (order[i].min(order[j]), order[i].max(order[j]));
                dups.push((ElementId(a), ElementId(b)));
            }
        }
        start = end;
    }
    dups.sort();
    Ok(if dups.is_empty() {
        WeightCheck::Ok
    } else {
        WeightCheck::Duplicates(dups)
    })
}

/// Parses a weights file: one `name weight` pair per line, `#` starts a comment.
pub fn parse_weights<W>(text: &str, ground: &GroundSet) -> Result<WeightMap<W>>
where
    W: Weight + FromStr,
{
    let mut pairs: Vec<(String, W)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (name, value) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(v), None) => (n, v),
            _ => {
                return Err(MatroidError::Parse {
                    line: lineno + 1,
                    msg: format!("expected `name weight`, got {line:?}"),
                })
            }
        };
        let w: W = value.parse().map_err(|_| MatroidError::Parse {
            line: lineno + 1,
            msg: format!("cannot parse weight {value:?}"),
        })?;
        match w.to_f64() {
            Some(x) if x.is_finite() => {}
            _ => {
                return Err(MatroidError::Parse {
                    line: lineno + 1,
                    msg: format!("weight {value:?} is not finite"),
                })
            }
        }
        pairs.push((name.to_string(), w));
    }
    WeightMap::from_pairs(ground, &pairs)
}

/// Renders weights in the same file format [`parse_weights`] reads.
pub fn format_weights<W: Weight>(w: &WeightMap<W>, ground: &GroundSet) -> String {
    let mut out = String::new();
    for id in ground.ids() {
        out.push_str(&format!("{} {}\n", ground.name(id), w.get(id.0)));
    }
    out
}
