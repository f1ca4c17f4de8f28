use super::{Construction, ConstructionError, Stage, Work};
use crate::graph::Graph;

const INVARIANT: &str = "no earlier vertex is all-1 or none is all-2";

/// 2-labelling of `K_n` (vertices `0..n` in order) in which exactly one
/// class induces an edge. Vertex `i` gets all its edges to earlier vertices
/// labelled 1 if no earlier vertex is incident only to 1s, and 2 otherwise.
pub fn label_complete(n: usize) -> Result<Construction, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { min: 2, found: n });
    }
    let g = Graph::complete(n);
    let mut w = Work::new(&g, 2);
    // 2-degrees restricted to the complete graph on the vertices added so far
    let mut d2 = vec![0usize; n];
    for i in 2..n {
        let all_one = (0..i).any(|v| d2[v] == 0);
        let all_two = (0..i).any(|v| d2[v] == i - 1);
        w.milestone(!(all_one && all_two), || format!("{INVARIANT} (before vertex {i})"))?;
        if all_one {
            for (v, d) in d2.iter_mut().enumerate().take(i) {
                w.set_between(v, i, 2, Stage::Complete, "new vertex takes 2");
                *d += 1;
            }
            d2[i] = i;
        }
    }
    w.trace.passed(INVARIANT);
    let (labelling, trace) = w.finish();
    Ok(Construction {
        labelling,
        trace,
        repairs: 0,
    })
}
