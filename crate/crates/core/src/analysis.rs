//! Minimization, equivalence, and structural obstruction detection on DFAs.
//!
//! The obstruction detectors work on the synchronized pair graph: node (a, b)
//! steps to (δ(a,σ), δ(b,σ)). Searches are breadth-first with symbols tried
//! in alphabet order, so every witness word is shortest and deterministic.

use crate::error::{Error, Result};
use crate::machines::Dfa;
use std::collections::VecDeque;

/// Pair of distinct states q1, q2 with non-empty words t, z such that t fixes
/// both states and z maps both onto q2. A minimal DFA admits one iff its
/// language is not accepted by any multi-letter quantum automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FConstructionWitness {
    pub q1: usize,
    pub q2: usize,
    pub t: Vec<usize>,
    pub z: Vec<usize>,
}

impl FConstructionWitness {
    /// Re-checks every defining equation directly with δ*.
    pub fn verify(&self, d: &Dfa) -> bool {
        self.q1 != self.q2
            && !self.t.is_empty()
            && !self.z.is_empty()
            && self.q1 < d.state_count()
            && self.q2 < d.state_count()
            && d.run_from(self.q1, &self.t).map_or(false, |s| s == self.q1)
            && d.run_from(self.q2, &self.t).map_or(false, |s| s == self.q2)
            && d.run_from(self.q1, &self.z).map_or(false, |s| s == self.q2)
            && d.run_from(self.q2, &self.z).map_or(false, |s| s == self.q2)
    }
}

/// Distinct states p, q with non-empty x merging p into the x-fixed state q,
/// a non-empty y returning q to p, and a (possibly empty) word d telling p
/// and q apart. Its presence rules out acceptance by any measure-many
/// automaton with bounded error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmBlockerWitness {
    pub p: usize,
    pub q: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub d: Vec<usize>,
}

impl MmBlockerWitness {
    /// Re-checks every defining equation directly with δ*.
    pub fn verify(&self, dfa: &Dfa) -> bool {
        let dist = |s: usize| dfa.run_from(s, &self.d).map(|t| dfa.is_accepting(t));
        self.p != self.q
            && !self.x.is_empty()
            && !self.y.is_empty()
            && self.p < dfa.state_count()
            && self.q < dfa.state_count()
            && dfa.run_from(self.p, &self.x).map_or(false, |s| s == self.q)
            && dfa.run_from(self.q, &self.x).map_or(false, |s| s == self.q)
            && dfa.run_from(self.q, &self.y).map_or(false, |s| s == self.p)
            && matches!((dist(self.p), dist(self.q)), (Ok(a), Ok(b)) if a != b)
    }
}

/// Result of a language comparison: on inequivalence, `witness` is the
/// shortest word (lexicographically first among shortest) accepted by exactly
/// one of the two automata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaComparison {
    pub equivalent: bool,
    pub witness: Option<Vec<usize>>,
}

fn reachable_states(d: &Dfa) -> Vec<usize> {
    let mut seen = vec![false; d.state_count()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen[d.initial()] = true;
    queue.push_back(d.initial());
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for sym in 0..d.alphabet().len() {
            let t = d.step(s, sym);
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order
}

/// Hopcroft partition refinement over the given sub-automaton.
/// `step` must be closed over `states`. Returns a block id per state index
/// (indices into `states`).
fn refine_partition(
    n: usize,
    alphabet: usize,
    step: &dyn Fn(usize, usize) -> usize,
    accepting: &dyn Fn(usize) -> bool,
) -> Vec<usize> {
    let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; alphabet];
    for s in 0..n {
        for sym in 0..alphabet {
            inverse[sym][step(s, sym)].push(s);
        }
    }
    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let acc: Vec<usize> = (0..n).filter(|&s| accepting(s)).collect();
    let rej: Vec<usize> = (0..n).filter(|&s| !accepting(s)).collect();
    for part in [acc, rej] {
        if !part.is_empty() {
            for &s in &part {
                block_of[s] = blocks.len();
            }
            blocks.push(part);
        }
    }
    let mut worklist: VecDeque<usize> = (0..blocks.len()).collect();
    let mut queued = vec![true; blocks.len()];
    while let Some(splitter_id) = worklist.pop_front() {
        queued[splitter_id] = false;
        let splitter = blocks[splitter_id].clone();
        for sym in 0..alphabet {
            // States that reach the splitter on this symbol, grouped by block.
            let mut hits: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
            let mut touched = Vec::new();
            for &t in &splitter {
                for &s in &inverse[sym][t] {
                    let b = block_of[s];
                    if hits[b].is_empty() {
                        touched.push(b);
                    }
                    hits[b].push(s);
                }
            }
            for b in touched {
                if hits[b].len() == blocks[b].len() {
                    continue; // the whole block maps in: no split
                }
                let inside = std::mem::take(&mut hits[b]);
                let inside_flag = {
                    let mut f = vec![false; n];
                    for &s in &inside {
                        f[s] = true;
                    }
                    f
                };
                let outside: Vec<usize> =
                    blocks[b].iter().copied().filter(|&s| !inside_flag[s]).collect();
                let new_id = blocks.len();
                for &s in &inside {
                    block_of[s] = new_id;
                }
                blocks[b] = outside;
                blocks.push(inside);
                queued.push(false);
                if queued[b] {
                    worklist.push_back(new_id);
                    queued[new_id] = true;
                } else {
                    let smaller = if blocks[b].len() <= blocks[new_id].len() { b } else { new_id };
                    worklist.push_back(smaller);
                    queued[smaller] = true;
                }
            }
        }
    }
    block_of
}

/// Minimal DFA for the same language, in canonical form: unreachable states
/// dropped, equivalent states merged, and the result renumbered by
/// breadth-first discovery from the initial state with symbols in alphabet
/// order. Two calls on language-equal inputs with the same alphabet produce
/// structurally identical machines.
pub fn minimize_dfa(d: &Dfa) -> Dfa {
    let reachable = reachable_states(d);
    let index_of = {
        let mut map = vec![usize::MAX; d.state_count()];
        for (i, &s) in reachable.iter().enumerate() {
            map[s] = i;
        }
        map
    };
    let n = reachable.len();
    let alphabet = d.alphabet().len();
    let step = |i: usize, sym: usize| index_of[d.step(reachable[i], sym)];
    let accepting = |i: usize| d.is_accepting(reachable[i]);
    let block_of = refine_partition(n, alphabet, &step, &accepting);

    // Canonical BFS renumbering of the blocks.
    let block_count = block_of.iter().max().unwrap() + 1;
    let mut canon = vec![usize::MAX; block_count];
    let mut order = Vec::with_capacity(block_count);
    let initial_block = block_of[index_of[d.initial()]];
    canon[initial_block] = 0;
    order.push(initial_block);
    // Representative state for each block (first by sub-automaton index).
    let mut rep = vec![usize::MAX; block_count];
    for i in (0..n).rev() {
        rep[block_of[i]] = i;
    }
    let mut head = 0;
    while head < order.len() {
        let b = order[head];
        head += 1;
        for sym in 0..alphabet {
            let t = block_of[step(rep[b], sym)];
            if canon[t] == usize::MAX {
                canon[t] = order.len();
                order.push(t);
            }
        }
    }
    let transitions: Vec<Vec<usize>> = order
        .iter()
        .map(|&b| (0..alphabet).map(|sym| canon[block_of[step(rep[b], sym)]]).collect())
        .collect();
    let accepting_flags: Vec<bool> = order.iter().map(|&b| accepting(rep[b])).collect();
    Dfa::new(d.alphabet().to_vec(), transitions, 0, accepting_flags)
        .expect("quotient of a valid DFA is valid")
}

/// Shortest non-empty word driving `start` to `target` in the synchronized
/// pair graph (start may equal target, giving the shortest cycle word).
fn pair_bfs_word(d: &Dfa, start: (usize, usize), target: (usize, usize)) -> Option<Vec<usize>> {
    let n = d.state_count();
    let idx = |(a, b): (usize, usize)| a * n + b;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n]; // (parent index, symbol)
    let mut seen = vec![false; n * n];
    seen[idx(start)] = true;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some((a, b)) = queue.pop_front() {
        for sym in 0..d.alphabet().len() {
            let next = (d.step(a, sym), d.step(b, sym));
            if next == target {
                let mut word = vec![sym];
                let mut cur = idx((a, b));
                while let Some((p, s)) = parent[cur] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            if !seen[idx(next)] {
                seen[idx(next)] = true;
                parent[idx(next)] = Some((idx((a, b)), sym));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Shortest word (possibly ε) on which exactly one of p, q ends accepting.
fn distinguishing_word(d: &Dfa, p: usize, q: usize) -> Option<Vec<usize>> {
    let n = d.state_count();
    let idx = |(a, b): (usize, usize)| a * n + b;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    seen[idx((p, q))] = true;
    let mut queue = VecDeque::new();
    queue.push_back((p, q));
    while let Some((a, b)) = queue.pop_front() {
        if d.is_accepting(a) != d.is_accepting(b) {
            let mut word = Vec::new();
            let mut cur = idx((a, b));
            while let Some((par, s)) = parent[cur] {
                word.push(s);
                cur = par;
            }
            word.reverse();
            return Some(word);
        }
        for sym in 0..d.alphabet().len() {
            let next = (d.step(a, sym), d.step(b, sym));
            if !seen[idx(next)] {
                seen[idx(next)] = true;
                parent[idx(next)] = Some((idx((a, b)), sym));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Shortest word from `from` to `to` within one DFA (ε when they are equal).
fn bfs_word(d: &Dfa, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; d.state_count()];
    let mut seen = vec![false; d.state_count()];
    seen[from] = true;
    let mut queue = VecDeque::new();
    queue.push_back(from);
    while let Some(s) = queue.pop_front() {
        if s == to {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some((p, sym)) = parent[cur] {
                word.push(sym);
                cur = p;
            }
            word.reverse();
            return Some(word);
        }
        for sym in 0..d.alphabet().len() {
            let t = d.step(s, sym);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, sym));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Language equality via breadth-first search over the product automaton.
pub fn dfa_equivalent(a: &Dfa, b: &Dfa) -> Result<DfaComparison> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            a.alphabet(),
            b.alphabet()
        )));
    }
    let idx = |(x, y): (usize, usize)| x * b.state_count() + y;
    let mut parent: Vec<Option<(usize, usize)>> =
        vec![None; a.state_count() * b.state_count()];
    let mut seen = vec![false; a.state_count() * b.state_count()];
    let start = (a.initial(), b.initial());
    seen[idx(start)] = true;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some((x, y)) = queue.pop_front() {
        if a.is_accepting(x) != b.is_accepting(y) {
            let mut word = Vec::new();
            let mut cur = idx((x, y));
            while let Some((p, sym)) = parent[cur] {
                word.push(sym);
                cur = p;
            }
            word.reverse();
            return Ok(DfaComparison { equivalent: false, witness: Some(word) });
        }
        for sym in 0..a.alphabet().len() {
            let next = (a.step(x, sym), b.step(y, sym));
            if !seen[idx(next)] {
                seen[idx(next)] = true;
                parent[idx(next)] = Some((idx((x, y)), sym));
                queue.push_back(next);
            }
        }
    }
    Ok(DfaComparison { equivalent: true, witness: None })
}

fn require_minimal(d: &Dfa) -> Result<()> {
    let minimal = minimize_dfa(d);
    if minimal.state_count() != d.state_count() {
        return Err(Error::NotMinimal {
            actual: d.state_count(),
            minimal: minimal.state_count(),
        });
    }
    Ok(())
}

/// Searches a minimal DFA for the two-state fixed-point pattern: the first
/// qualifying ordered pair (q1, q2), with shortest cycle word t and shortest
/// merge word z. Returns None when the language is accepted by some
/// multi-letter quantum automaton.
pub fn find_f_construction(d: &Dfa) -> Result<Option<FConstructionWitness>> {
    require_minimal(d)?;
    let n = d.state_count();
    for q1 in 0..n {
        for q2 in 0..n {
            if q1 == q2 {
                continue;
            }
            let Some(t) = pair_bfs_word(d, (q1, q2), (q1, q2)) else { continue };
            let Some(z) = pair_bfs_word(d, (q1, q2), (q2, q2)) else { continue };
            let w = FConstructionWitness { q1, q2, t, z };
            debug_assert!(w.verify(d));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Searches a minimal DFA for the merge-and-return pattern with a
/// distinguishing word: first qualifying ordered pair (p, q), shortest words.
/// Its presence proves the language is beyond measure-many automata; absence
/// alone is not conclusive.
pub fn find_mm_blocker(d: &Dfa) -> Result<Option<MmBlockerWitness>> {
    require_minimal(d)?;
    let n = d.state_count();
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let Some(x) = pair_bfs_word(d, (p, q), (q, q)) else { continue };
            let Some(y) = bfs_word(d, q, p).filter(|w| !w.is_empty()) else { continue };
            let Some(dist) = distinguishing_word(d, p, q) else { continue };
            let w = MmBlockerWitness { p, q, x, y, d: dist };
            debug_assert!(w.verify(d));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_l0_dfa, build_l0m_dfa, build_lzm_dfa};
    use crate::random::random_dfa;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn alphabet01() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    /// Independent minimization oracle: Moore's iterative refinement by
    /// (acceptance, successor-class vector) signatures over reachable states.
    fn moore_minimal_count(d: &Dfa) -> usize {
        let reachable = reachable_states(d);
        let index_of = {
            let mut map = vec![usize::MAX; d.state_count()];
            for (i, &s) in reachable.iter().enumerate() {
                map[s] = i;
            }
            map
        };
        let n = reachable.len();
        let mut class: Vec<usize> =
            reachable.iter().map(|&s| d.is_accepting(s) as usize).collect();
        loop {
            let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|i| {
                    let succ = (0..d.alphabet().len())
                        .map(|sym| class[index_of[d.step(reachable[i], sym)]])
                        .collect();
                    (class[i], succ)
                })
                .collect();
            let mut uniq: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
            uniq.sort();
            uniq.dedup();
            let next: Vec<usize> = signatures
                .iter()
                .map(|sig| uniq.binary_search(&sig).unwrap())
                .collect();
            if next == class {
                return uniq.len();
            }
            class = next;
            signatures.clear();
        }
    }

    /// All distinct transition functions δ*_w for non-empty w, as vectors.
    fn transition_monoid(d: &Dfa) -> Vec<Vec<usize>> {
        let n = d.state_count();
        let generators: Vec<Vec<usize>> = (0..d.alphabet().len())
            .map(|sym| (0..n).map(|s| d.step(s, sym)).collect())
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        for g in &generators {
            if seen.insert(g.clone()) {
                queue.push_back(g.clone());
            }
        }
        while let Some(f) = queue.pop_front() {
            for g in &generators {
                // word wσ: first f = δ*_w, then the generator.
                let h: Vec<usize> = (0..n).map(|s| g[f[s]]).collect();
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn monoid_has_f_construction(d: &Dfa) -> bool {
        let monoid = transition_monoid(d);
        let n = d.state_count();
        for q1 in 0..n {
            for q2 in 0..n {
                if q1 == q2 {
                    continue;
                }
                let has_t = monoid.iter().any(|f| f[q1] == q1 && f[q2] == q2);
                let has_z = monoid.iter().any(|f| f[q1] == q2 && f[q2] == q2);
                if has_t && has_z {
                    return true;
                }
            }
        }
        false
    }

    fn monoid_has_mm_blocker(d: &Dfa) -> bool {
        let monoid = transition_monoid(d);
        let n = d.state_count();
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                let has_x = monoid.iter().any(|f| f[p] == q && f[q] == q);
                let has_y = monoid.iter().any(|f| f[q] == p);
                if has_x && has_y && distinguishing_word(d, p, q).is_some() {
                    return true;
                }
            }
        }
        false
    }

    fn random_minimal_dfa(rng: &mut ChaCha8Rng, max_states: usize) -> Dfa {
        loop {
            let states = 2 + rand::Rng::gen_range(rng, 0..max_states - 1);
            let d = minimize_dfa(&random_dfa(rng, states + 1, alphabet01()));
            if d.state_count() >= 2 {
                return d;
            }
        }
    }

    #[test]
    fn minimize_keeps_canonical_machines_fixed() {
        for m in 2..=8 {
            let d = build_l0m_dfa(m).unwrap();
            let min = minimize_dfa(&d);
            assert_eq!(min.state_count(), m + 1);
            assert_eq!(min, d, "the ring machine is already canonical");
        }
        assert_eq!(minimize_dfa(&build_l0_dfa()).state_count(), 2);
    }

    #[test]
    fn minimize_counts_for_subword_families() {
        let cases = [
            (vec![0], 2, 4),
            (vec![0], 3, 6),
            (vec![0, 1], 3, 9),
            (vec![0, 1, 0], 2, 8),
        ];
        for (z, m, expect) in cases {
            let d = build_lzm_dfa(&z, m, alphabet01()).unwrap();
            assert_eq!(minimize_dfa(&d).state_count(), expect, "z={z:?} m={m}");
        }
    }

    #[test]
    fn minimize_removes_unreachable_and_merged_states() {
        // States 2 and 3 are copies of 0 and 1; state 4 is unreachable.
        let d = Dfa::new(
            alphabet01(),
            vec![
                vec![1, 0],
                vec![1, 0],
                vec![3, 2],
                vec![3, 2],
                vec![4, 4],
            ],
            0,
            vec![false, true, false, true, true],
        )
        .unwrap();
        let min = minimize_dfa(&d);
        assert_eq!(min.state_count(), 2);
        assert!(dfa_equivalent(&d, &min).unwrap().equivalent);
    }

    #[test]
    fn minimize_is_idempotent_and_language_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..40 {
            let d = random_dfa(&mut rng, 8, alphabet01());
            let min = minimize_dfa(&d);
            assert!(dfa_equivalent(&d, &min).unwrap().equivalent);
            assert_eq!(minimize_dfa(&min), min);
            assert!(min.state_count() <= d.state_count());
        }
    }

    #[test]
    fn minimize_agrees_with_moore_refinement_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for _ in 0..60 {
            let d = random_dfa(&mut rng, 7, alphabet01());
            assert_eq!(minimize_dfa(&d).state_count(), moore_minimal_count(&d));
        }
    }

    #[test]
    fn equivalence_finds_shortest_witness() {
        let a = build_l0m_dfa(2).unwrap();
        let b = build_lzm_dfa(&[0], 2, alphabet01()).unwrap();
        let cmp = dfa_equivalent(&a, &b).unwrap();
        assert!(!cmp.equivalent);
        // "01" is even length with a 0 but does not end in 0.
        assert_eq!(cmp.witness, Some(vec![0, 1]));
        let same = dfa_equivalent(&a, &minimize_dfa(&a)).unwrap();
        assert!(same.equivalent && same.witness.is_none());
    }

    #[test]
    fn equivalence_requires_matching_alphabets() {
        let a = build_l0_dfa();
        let b = Dfa::new(vec!["x".into()], vec![vec![0]], 0, vec![true]).unwrap();
        assert!(matches!(dfa_equivalent(&a, &b), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn f_construction_on_subword_language_matches_known_pair() {
        let d = minimize_dfa(&build_lzm_dfa(&[0], 2, alphabet01()).unwrap());
        let w = find_f_construction(&d).unwrap().expect("obstruction exists");
        assert!(w.verify(&d));
        assert_eq!((w.q1, w.q2), (0, 3));
        assert_eq!(w.t, vec![1, 1]);
        assert_eq!(w.z, vec![0, 0]);
    }

    #[test]
    fn f_construction_absent_for_ring_languages() {
        assert!(find_f_construction(&build_l0_dfa()).unwrap().is_none());
        for m in 2..=4 {
            let d = build_l0m_dfa(m).unwrap();
            assert!(find_f_construction(&d).unwrap().is_none(), "m={m}");
        }
    }

    #[test]
    fn obstruction_detectors_require_minimal_input() {
        let bloated = Dfa::new(
            alphabet01(),
            vec![vec![1, 0], vec![2, 0], vec![1, 0]],
            0,
            vec![false, true, true],
        )
        .unwrap();
        assert!(matches!(
            find_f_construction(&bloated),
            Err(Error::NotMinimal { actual: 3, minimal: 2 })
        ));
        assert!(matches!(find_mm_blocker(&bloated), Err(Error::NotMinimal { .. })));
    }

    #[test]
    fn mm_blocker_on_ring_languages_matches_known_instance() {
        for m in 2..=5 {
            let d = build_l0m_dfa(m).unwrap();
            let w = find_mm_blocker(&d).unwrap().expect("blocker exists");
            assert!(w.verify(&d), "m={m}");
            assert_eq!((w.p, w.q), (0, m));
            assert_eq!(w.x, vec![0; m]);
            let mut y = vec![0; m - 1];
            y.push(1);
            assert_eq!(w.y, y);
            assert_eq!(w.d, Vec::<usize>::new());
        }
    }

    #[test]
    fn mm_blocker_on_ends_in_zero_language() {
        let w = find_mm_blocker(&build_l0_dfa()).unwrap().expect("blocker exists");
        assert_eq!((w.p, w.q), (0, 1));
        assert_eq!(w.x, vec![0]);
        assert_eq!(w.y, vec![1]);
        assert!(w.d.is_empty());
    }

    #[test]
    fn detectors_agree_with_transition_monoid_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        let mut found_f = 0;
        let mut found_mm = 0;
        for _ in 0..60 {
            let d = random_minimal_dfa(&mut rng, 5);
            let f = find_f_construction(&d).unwrap();
            assert_eq!(f.is_some(), monoid_has_f_construction(&d));
            if let Some(w) = &f {
                assert!(w.verify(&d));
                found_f += 1;
            }
            let b = find_mm_blocker(&d).unwrap();
            assert_eq!(b.is_some(), monoid_has_mm_blocker(&d));
            if let Some(w) = &b {
                assert!(w.verify(&d));
                found_mm += 1;
            }
        }
        // The sample must exercise both branches of each detector.
        assert!(found_f > 0 && found_f < 60);
        assert!(found_mm > 0);
    }
}
