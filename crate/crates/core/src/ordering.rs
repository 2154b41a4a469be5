use crate::graph::Graph;
use crate::instance::Direction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderDirection {
    NonIncreasing,
    NonDecreasing,
}

impl From<Direction> for OrderDirection {
    /// Max instances order by non-increasing degree, Min by non-decreasing.
    fn from(d: Direction) -> Self {
        match d {
            Direction::Max => OrderDirection::NonIncreasing,
            Direction::Min => OrderDirection::NonDecreasing,
        }
    }
}

/// Vertices sorted by degree; ties broken by ascending vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOrdering {
    permutation: Vec<usize>,
    position: Vec<usize>,
    direction: OrderDirection,
}

impl DegreeOrdering {
    pub fn new(graph: &Graph, direction: OrderDirection) -> Self {
        let mut permutation: Vec<usize> = (0..graph.n()).collect();
        match direction {
            OrderDirection::NonIncreasing => {
                permutation.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v))
            }
            OrderDirection::NonDecreasing => permutation.sort_by_key(|&v| (graph.degree(v), v)),
        }
        let mut position = vec![0; graph.n()];
        for (i, &v) in permutation.iter().enumerate() {
            position[v] = i;
        }
        DegreeOrdering {
            permutation,
            position,
            direction,
        }
    }

    /// `v_1, ..., v_n` as 0-indexed ids.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// 0-based position of `v` in the ordering.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn direction(&self) -> OrderDirection {
        self.direction
    }

    /// The first `j` vertices of the ordering.
    pub fn prefix(&self, j: usize) -> &[usize] {
        &self.permutation[..j]
    }

    /// True if consecutive degrees respect the ordering direction.
    pub fn is_monotone(&self, graph: &Graph) -> bool {
        self.permutation.windows(2).all(|w| {
            let (a, b) = (graph.degree(w[0]), graph.degree(w[1]));
            match self.direction {
                OrderDirection::NonIncreasing => a >= b,
                OrderDirection::NonDecreasing => a <= b,
            }
        })
    }
}

/// Convenience wrapper around [`DegreeOrdering::new`].
pub fn degree_ordering(graph: &Graph, direction: OrderDirection) -> DegreeOrdering {
    DegreeOrdering::new(graph, direction)
}
