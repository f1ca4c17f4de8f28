use super::{Construction, ConstructionError, Stage, Work};
use crate::graph::{Graph, Vertex};

/// 2-labelling of a connected bipartite graph in which every vertex at odd
/// distance from `root` has odd 2-degree and every other vertex except the
/// root has even 2-degree, so only the root can be in conflict. Layers are
/// handled deepest first, each vertex labelling its edges to the previous
/// layer 2 except, if parity demands it, the one to its smallest parent.
pub fn label_bipartite_two(g: &Graph, root: Option<Vertex>) -> Result<Construction, ConstructionError> {
    g.bipartition()?;
    let root = root.unwrap_or(0);
    let layering = g.bfs_layers(root)?;
    let mut w = Work::new(g, 2);
    for (i, layer) in layering.layers.iter().enumerate().skip(1).rev() {
        let mut layer = layer.clone();
        layer.sort_unstable();
        for v in layer {
            let parents: Vec<Vertex> = g.neighbors(v).filter(|&u| layering.layer_of[u] + 1 == i).collect();
            let below = w.d(v, 2) as usize;
            let flip = (below + parents.len()) % 2 != i % 2;
            for (j, &u) in parents.iter().enumerate() {
                if !(flip && j == 0) {
                    w.set_between(v, u, 2, Stage::Bipartite, "edge to previous layer");
                }
            }
        }
    }
    let (labelling, trace) = w.finish();
    Ok(Construction {
        labelling,
        trace,
        repairs: 0,
    })
}
