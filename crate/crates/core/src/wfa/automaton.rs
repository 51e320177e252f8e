//! Weighted automata with edge identity and provenance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Alphabet, Letter};
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::wfa::representation::LinearRepresentation;

/// Where an edge or initial weight came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivationKey {
    Original,
    /// Summed bypass weight for the transition `source --letter--> target`.
    Bypass { source: usize, letter: Letter, target: usize },
    /// Initial weight gained at `state` by skipping a cancelling prefix.
    InitialBypass { state: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<K> {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
    pub letter: Letter,
    pub weight: K,
    pub provenance: DerivationKey,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitialWeight<K> {
    pub state: usize,
    pub weight: K,
    pub provenance: DerivationKey,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedAutomaton<K> {
    generators: usize,
    state_count: usize,
    edges: Vec<Edge<K>>,
    initial: Vec<InitialWeight<K>>,
    finals: BTreeMap<usize, K>,
    next_id: usize,
}

impl<K: Field> WeightedAutomaton<K> {
    pub fn new(generators: usize, state_count: usize) -> Self {
        WeightedAutomaton { generators, state_count, edges: vec![], initial: vec![], finals: BTreeMap::new(), next_id: 0 }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn edges(&self) -> &[Edge<K>] {
        &self.edges
    }

    pub fn initial_weights(&self) -> &[InitialWeight<K>] {
        &self.initial
    }

    pub fn add_state(&mut self) -> usize {
        self.state_count += 1;
        self.state_count - 1
    }

    /// Adds an original edge; zero weights are dropped. Returns the edge id.
    pub fn add_edge(&mut self, src: usize, dst: usize, letter: Letter, weight: K) -> Option<usize> {
        self.add_edge_with(src, dst, letter, weight, DerivationKey::Original)
    }

    pub fn add_edge_with(&mut self, src: usize, dst: usize, letter: Letter, weight: K, provenance: DerivationKey) -> Option<usize> {
        assert!(src < self.state_count && dst < self.state_count, "edge endpoint out of range");
        assert!(letter.generator_index < self.generators, "letter outside the alphabet");
        if weight.is_zero() {
            return None;
        }
        let id = self.next_id;
        self.next_id += 1;
        self.edges.push(Edge { id, src, dst, letter, weight, provenance });
        Some(id)
    }

    pub fn add_initial(&mut self, state: usize, weight: K) {
        self.add_initial_with(state, weight, DerivationKey::Original);
    }

    pub fn add_initial_with(&mut self, state: usize, weight: K, provenance: DerivationKey) {
        assert!(state < self.state_count);
        if !weight.is_zero() {
            self.initial.push(InitialWeight { state, weight, provenance });
        }
    }

    pub fn set_final(&mut self, state: usize, weight: K) {
        assert!(state < self.state_count);
        if weight.is_zero() {
            self.finals.remove(&state);
        } else {
            self.finals.insert(state, weight);
        }
    }

    pub fn add_final(&mut self, state: usize, weight: K) {
        let w = self.final_weight(state) + weight;
        self.set_final(state, w);
    }

    pub fn initial_weight(&self, state: usize) -> K {
        let mut acc = K::zero();
        for i in self.initial.iter().filter(|i| i.state == state) {
            acc += &i.weight;
        }
        acc
    }

    pub fn final_weight(&self, state: usize) -> K {
        self.finals.get(&state).cloned().unwrap_or_else(K::zero)
    }

    pub fn finals(&self) -> impl Iterator<Item = (usize, &K)> {
        self.finals.iter().map(|(s, w)| (*s, w))
    }

    pub fn bypass_edges(&self) -> impl Iterator<Item = &Edge<K>> {
        self.edges.iter().filter(|e| e.provenance != DerivationKey::Original)
    }

    /// Summed transition weights become the matrices.
    pub fn to_representation(&self) -> LinearRepresentation<K> {
        let n = self.state_count;
        let mut mu = vec![Matrix::zeros(n, n); 2 * self.generators];
        for e in &self.edges {
            mu[e.letter.code()][(e.src, e.dst)] += &e.weight;
        }
        let lambda = (0..n).map(|s| self.initial_weight(s)).collect();
        let rho = (0..n).map(|s| self.final_weight(s)).collect();
        LinearRepresentation::new(self.generators, lambda, mu, rho).expect("consistent shapes")
    }

    /// One state per dimension, one edge per nonzero matrix entry.
    pub fn from_representation(rep: &LinearRepresentation<K>) -> Self {
        let mut a = WeightedAutomaton::new(rep.generators(), rep.dim());
        for (i, w) in rep.lambda().iter().enumerate() {
            a.add_initial(i, w.clone());
        }
        for (i, w) in rep.rho().iter().enumerate() {
            a.set_final(i, w.clone());
        }
        for (code, m) in rep.mu_all().iter().enumerate() {
            for (i, j, w) in m.nonzero_entries() {
                a.add_edge(i, j, Letter::from_code(code), w.clone());
            }
        }
        a
    }

    /// One initial state with weight 1 and no incoming edges.
    pub fn is_standard(&self) -> bool {
        let init: Vec<usize> = (0..self.state_count).filter(|&s| !self.initial_weight(s).is_zero()).collect();
        init.len() == 1 && self.initial_weight(init[0]).is_one() && self.edges.iter().all(|e| e.dst != init[0])
    }

    /// Equivalent standard automaton: a fresh initial state takes over all initial weights.
    pub fn standardize(&self) -> Self {
        if self.is_standard() {
            return self.clone();
        }
        let mut a = self.clone();
        let s = a.add_state();
        let weights: Vec<(usize, K)> =
            (0..self.state_count).map(|q| (q, self.initial_weight(q))).filter(|(_, w)| !w.is_zero()).collect();
        a.initial.clear();
        a.add_initial(s, K::one());
        let mut fin = K::zero();
        for (q, w) in &weights {
            fin += w.clone() * self.final_weight(*q);
            for e in self.edges.iter().filter(|e| e.src == *q) {
                a.add_edge(s, e.dst, e.letter, w.clone() * &e.weight);
            }
        }
        a.set_final(s, fin);
        a
    }

    /// Keep states that are accessible and co-accessible; renumbers in order.
    pub fn trim(&self) -> Self {
        let n = self.state_count;
        let mut acc = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&s| !self.initial_weight(s).is_zero()).collect();
        for &s in &stack {
            acc[s] = true;
        }
        while let Some(s) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.src == s) {
                if !acc[e.dst] {
                    acc[e.dst] = true;
                    stack.push(e.dst);
                }
            }
        }
        let mut co = vec![false; n];
        let mut stack: Vec<usize> = self.finals.keys().copied().collect();
        for &s in &stack {
            co[s] = true;
        }
        while let Some(s) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.dst == s) {
                if !co[e.src] {
                    co[e.src] = true;
                    stack.push(e.src);
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut k = 0;
        for s in 0..n {
            if acc[s] && co[s] {
                map[s] = k;
                k += 1;
            }
        }
        let mut out = WeightedAutomaton::new(self.generators, k);
        out.next_id = self.next_id;
        for e in &self.edges {
            if map[e.src] != usize::MAX && map[e.dst] != usize::MAX {
                out.edges.push(Edge { src: map[e.src], dst: map[e.dst], ..e.clone() });
            }
        }
        for i in &self.initial {
            if map[i.state] != usize::MAX {
                out.initial.push(InitialWeight { state: map[i.state], ..i.clone() });
            }
        }
        for (s, w) in &self.finals {
            if map[*s] != usize::MAX {
                out.finals.insert(map[*s], w.clone());
            }
        }
        out
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> String {
        let j = AutomatonJson {
            alphabet: alphabet.names().to_vec(),
            states: self.state_count,
            initial: (0..self.state_count)
                .map(|s| (s, self.initial_weight(s)))
                .filter(|(_, w)| !w.is_zero())
                .map(|(s, w)| (s, w.to_string()))
                .collect(),
            r#final: self.finals.iter().map(|(s, w)| (*s, w.to_string())).collect(),
            edges: self.edges.iter().map(|e| (e.src, alphabet.letter_name(e.letter), e.dst, e.weight.to_string())).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<(Alphabet, Self)> {
        let j: AutomatonJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let alphabet = Alphabet::new(&j.alphabet)?;
        let weight = |s: &str| K::parse_ratio(s).ok_or_else(|| Error::Json(format!("bad weight `{s}`")));
        let state = |s: usize| if s < j.states { Ok(s) } else { Err(Error::Json(format!("state {s} out of range"))) };
        let mut a = WeightedAutomaton::new(alphabet.size(), j.states);
        for (s, w) in &j.initial {
            a.add_initial(state(*s)?, weight(w)?);
        }
        for (s, w) in &j.r#final {
            a.add_final(state(*s)?, weight(w)?);
        }
        for (src, l, dst, w) in &j.edges {
            let word = alphabet.parse_word(l)?;
            if word.len() != 1 {
                return Err(Error::Json(format!("edge label `{l}` is not a single letter")));
            }
            a.add_edge(state(*src)?, state(*dst)?, word.letters()[0], weight(w)?);
        }
        Ok((alphabet, a))
    }

    /// Graphviz rendering: incoming arrow on initial states, double circles on
    /// final states, dashed bypass edges.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
        for q in 0..self.state_count {
            let shape = if self.final_weight(q).is_zero() { "circle" } else { "doublecircle" };
            let label = if self.final_weight(q).is_zero() || self.final_weight(q).is_one() {
                format!("{q}")
            } else {
                format!("{q} / {}", self.final_weight(q))
            };
            let _ = writeln!(s, "  q{q} [shape={shape}, label=\"{label}\"];");
            let iw = self.initial_weight(q);
            if !iw.is_zero() {
                let _ = writeln!(s, "  init{q} [shape=point];");
                let lab = if iw.is_one() { String::new() } else { iw.to_string() };
                let _ = writeln!(s, "  init{q} -> q{q} [label=\"{lab}\"];");
            }
        }
        for e in &self.edges {
            let lab = if e.weight.is_one() {
                alphabet.letter_name(e.letter)
            } else {
                format!("({}) {}", e.weight, alphabet.letter_name(e.letter))
            };
            let style = if e.provenance == DerivationKey::Original { "" } else { ", style=dashed" };
            let _ = writeln!(s, "  q{} -> q{} [label=\"{lab}\"{style}];", e.src, e.dst);
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    alphabet: Vec<String>,
    states: usize,
    initial: Vec<(usize, String)>,
    r#final: Vec<(usize, String)>,
    edges: Vec<(usize, String, usize, String)>,
}
