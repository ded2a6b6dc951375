use std::collections::BTreeSet;

use super::system::TransitionSystem;
use crate::hyperltl::LassoTrace;

/// All input lassos `(stem, loop)` over valuations `0..num_vals` with
/// `|stem| ≤ stem_max` and `1 ≤ |loop| ≤ loop_max`.
pub fn enumerate_input_lassos(
    num_vals: usize,
    stem_max: usize,
    loop_max: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let words = |max_len: usize, min_len: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for len in 0..=max_len {
            if len >= min_len {
                out.extend(layer.iter().cloned());
            }
            if len == max_len {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..num_vals).map(move |v| {
                        let mut w = w.clone();
                        w.push(v);
                        w
                    })
                })
                .collect();
        }
        out
    };
    let stems = words(stem_max, 0);
    let loops = words(loop_max, 1);
    stems
        .iter()
        .flat_map(|s| loops.iter().map(move |l| (s.clone(), l.clone())))
        .collect()
}

/// Trace lassos of `sys` induced by all input lassos within the bounds,
/// deduplicated up to canonical form.
pub fn enumerate_lassos(sys: &TransitionSystem, stem_max: usize, loop_max: usize) -> BTreeSet<LassoTrace> {
    enumerate_input_lassos(sys.num_valuations(), stem_max, loop_max.max(1))
        .into_iter()
        .map(|(s, l)| sys.trace_of(&s, &l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_input_lassos(2, 1, 1).len(), 6);
        assert_eq!(enumerate_input_lassos(2, 0, 2).len(), 6);
    }

    #[test]
    fn epsilon_has_one_lasso() {
        let l = enumerate_lassos(&TransitionSystem::epsilon(), 3, 3);
        assert_eq!(l.into_iter().collect::<Vec<_>>(), vec![LassoTrace::empty_word()]);
    }

    #[test]
    fn toggle_has_one_lasso() {
        let t = TransitionSystem::new(
            vec![],
            vec!["a".into()],
            vec!["s0".into(), "s1".into()],
            0,
            vec![1, 0],
            vec![1, 0],
        )
        .unwrap();
        let l = enumerate_lassos(&t, 3, 3);
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn one_input_small_bounds() {
        let f = TransitionSystem::new(vec!["a".into()], vec![], vec!["s".into()], 0, vec![0], vec![0, 0])
            .unwrap();
        // four input lassos with a one-letter stem, two without; canonical
        // forms coincide to the two constant words plus two with a stem.
        let l = enumerate_lassos(&f, 1, 1);
        assert!(l.len() <= 4 + 2);
        assert_eq!(l.len(), 4);
    }
}
