use crate::dyck::{Bracket, DyckWord};
use crate::phi::NonterminalPartition;

/// Shape of a trace-word of a grammar produced by `elin_to_dyck_nf`.
/// `p` is half the length of the derived word, rounded down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceShape {
    /// `([j ]j [i)^(p-1) [j ]j [c ]c (]i)^(p-1)` with `j` in `N2l`, `i` in
    /// `N2r`, `c` in `N1`: odd length `2p + 1`. The empty trace of a
    /// one-letter word is `FormA { p: 0 }`.
    FormA {
        p: usize,
    },
    /// `([j ]j [i)^(p-1) [c ]c (]i)^(p-1)`: even length `2p`.
    FormB {
        p: usize,
    },
    Neither,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    N1,
    N2l,
    N2r,
    N3,
}

fn class_of(part: &NonterminalPartition, pair: usize) -> Option<Class> {
    [
        (&part.n1, Class::N1),
        (&part.n2_left, Class::N2l),
        (&part.n2_right, Class::N2r),
        (&part.n3, Class::N3),
    ]
    .into_iter()
    .find(|(v, _)| v.contains(&pair))
    .map(|(_, c)| c)
}

pub fn trace_shape_check(part: &NonterminalPartition, t: &DyckWord) -> TraceShape {
    shape(part, &t.0).unwrap_or(TraceShape::Neither)
}

fn shape(part: &NonterminalPartition, t: &[Bracket]) -> Option<TraceShape> {
    if t.is_empty() {
        return Some(TraceShape::FormA { p: 0 });
    }
    let class = |b: Bracket| class_of(part, b.pair);
    let is_pair = |x: Bracket, y: Bracket| x.is_left() && y == Bracket::right(x.pair);
    let mut open = Vec::new();
    let mut i = 0;
    while i + 2 < t.len()
        && is_pair(t[i], t[i + 1])
        && class(t[i])? == Class::N2l
        && t[i + 2].is_left()
        && class(t[i + 2])? == Class::N2r
    {
        open.push(t[i + 2].pair);
        i += 3;
    }
    let rest = &t[i..];
    let (form, tail) =
        if rest.len() >= 4 && is_pair(rest[0], rest[1]) && class(rest[0])? == Class::N2l {
            if !(is_pair(rest[2], rest[3]) && class(rest[2])? == Class::N1) {
                return None;
            }
            (TraceShape::FormA { p: open.len() + 1 }, &rest[4..])
        } else if rest.len() >= 2 && is_pair(rest[0], rest[1]) && class(rest[0])? == Class::N1 {
            (TraceShape::FormB { p: open.len() + 1 }, &rest[2..])
        } else {
            return None;
        };
    let closing: Vec<Bracket> = open.iter().rev().map(|&i| Bracket::right(i)).collect();
    (tail == closing.as_slice()).then_some(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part() -> NonterminalPartition {
        NonterminalPartition {
            n1: vec![3],
            n2_left: vec![1],
            n2_right: vec![2],
            ..Default::default()
        }
    }

    #[test]
    fn forms() {
        let p = part();
        let check = |s: &str| trace_shape_check(&p, &s.parse().unwrap());
        assert_eq!(check("[1 ]1 [3 ]3"), TraceShape::FormA { p: 1 });
        assert_eq!(check("[1 ]1 [2 [1 ]1 [3 ]3 ]2"), TraceShape::FormA { p: 2 });
        assert_eq!(check("[3 ]3"), TraceShape::FormB { p: 1 });
        assert_eq!(check("[1 ]1 [2 [3 ]3 ]2"), TraceShape::FormB { p: 2 });
        assert_eq!(check("[1 ]1 [2 [3 ]3"), TraceShape::Neither);
        assert_eq!(check("[2 [1 ]1 [3 ]3 ]2"), TraceShape::Neither);
        assert_eq!(check("[1 ]1 [2 [1 ]1 ]2"), TraceShape::Neither);
        assert_eq!(
            trace_shape_check(&p, &DyckWord(vec![])),
            TraceShape::FormA { p: 0 }
        );
    }
}
