//! Equitable refinement of ordered vertex partitions.
//!
//! Cells split in place, so a singleton keeps its position once it appears.
//! The result depends only on the graph structure and the input partition,
//! which is what canonical labelling needs.

use crate::graph::{Graph, VertexSet};

/// Ordered partition; each cell is kept sorted.
pub type Cells = Vec<Vec<usize>>;

/// Refines `cells` until every cell has a uniform neighbour count into every other cell.
pub fn refine(g: &Graph, cells: &mut Cells) {
    let mut s = 0;
    // Restart the splitter scan whenever anything splits; n is small here.
    while s < cells.len() {
        let splitter: VertexSet = cells[s].iter().copied().collect();
        let mut split_any = false;
        let mut i = 0;
        while i < cells.len() {
            if cells[i].len() == 1 {
                i += 1;
                continue;
            }
            let mut keyed: Vec<(usize, usize)> = cells[i].iter().map(|&v| (g.degree_in(v, &splitter), v)).collect();
            keyed.sort_unstable();
            if keyed.first().map(|k| k.0) == keyed.last().map(|k| k.0) {
                i += 1;
                continue;
            }
            let mut pieces: Vec<Vec<usize>> = Vec::new();
            let mut last = usize::MAX;
            for (k, v) in keyed {
                if k != last {
                    pieces.push(Vec::new());
                    last = k;
                }
                pieces.last_mut().unwrap().push(v);
            }
            let added = pieces.len();
            cells.splice(i..=i, pieces);
            i += added;
            split_any = true;
        }
        s = if split_any { 0 } else { s + 1 };
    }
}

/// Coarsest equitable partition reachable from the unit partition.
pub fn coarsest_equitable_partition(g: &Graph) -> Vec<VertexSet> {
    if g.order() == 0 {
        return Vec::new();
    }
    let mut cells = vec![(0..g.order()).collect::<Vec<_>>()];
    refine(g, &mut cells);
    cells.into_iter().map(|c| c.into_iter().collect()).collect()
}

/// Moves `v` into its own cell, placed just before the rest of its old cell.
pub fn individualize(cells: &Cells, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        if cell.len() > 1 && cell.contains(&v) {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&x| x != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_g4, make_s_minus};
    use crate::spectral::{is_equitable, Equitability};

    #[test]
    fn regular_graph_stays_whole() {
        let c = Graph::cycle(7).unwrap();
        assert_eq!(coarsest_equitable_partition(&c).len(), 1);
    }

    #[test]
    fn g4_partition_recovered() {
        let g = make_g4(5, 2).unwrap();
        let p = coarsest_equitable_partition(&g);
        assert_eq!(p.len(), 4);
        assert!(matches!(is_equitable(&g, &p).unwrap(), Equitability::Equitable(_)));
    }

    #[test]
    fn refinement_is_equitable() {
        for seed in 0..20 {
            let g = crate::random::gnp(14, 0.3, seed);
            let p = coarsest_equitable_partition(&g);
            assert!(matches!(is_equitable(&g, &p).unwrap(), Equitability::Equitable(_)));
        }
        let sm = make_s_minus(12, 2).unwrap();
        assert_eq!(coarsest_equitable_partition(&sm).len(), 4);
    }
}
