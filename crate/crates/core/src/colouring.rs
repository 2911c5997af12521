//! Colourings, labellings and list assignments.
//!
//! Colourings are total maps stored densely: entry `i` is the colour of vertex
//! (or edge) `i`. Colours are plain integers.

use std::collections::BTreeSet;

pub type Colour = i64;

/// Colour of each vertex, indexed by vertex.
pub type VertexColouring = Vec<Colour>;
/// Colour of each edge, indexed by edge id.
pub type EdgeColouring = Vec<Colour>;
/// Integer label of each vertex, indexed by vertex.
pub type Labelling = Vec<Colour>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ListTarget {
    Vertices,
    Edges,
}

/// Permitted colours per vertex or per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    pub target: ListTarget,
    pub lists: Vec<BTreeSet<Colour>>,
}

impl ListAssignment {
    pub fn new(target: ListTarget, lists: Vec<BTreeSet<Colour>>) -> Self {
        ListAssignment { target, lists }
    }

    /// Every item gets `{first, first+1, ..., first+size-1}`.
    pub fn uniform(target: ListTarget, items: usize, first: Colour, size: usize) -> Self {
        let list: BTreeSet<Colour> = (first..first + size as Colour).collect();
        ListAssignment { target, lists: vec![list; items] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// The uniform lower bound `t` on list sizes (0 for an empty assignment).
    pub fn min_size(&self) -> usize {
        self.lists.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn list(&self, item: usize) -> &BTreeSet<Colour> {
        &self.lists[item]
    }
}

/// Number of distinct colours used.
pub fn colour_count(colouring: &[Colour]) -> usize {
    colouring.iter().collect::<BTreeSet<_>>().len()
}

/// Items grouped by colour, ascending by colour.
pub fn colour_classes(colouring: &[Colour]) -> Vec<(Colour, Vec<usize>)> {
    let mut classes: std::collections::BTreeMap<Colour, Vec<usize>> = Default::default();
    for (item, &c) in colouring.iter().enumerate() {
        classes.entry(c).or_default().push(item);
    }
    classes.into_iter().collect()
}
