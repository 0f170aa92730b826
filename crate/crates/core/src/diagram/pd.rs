//! Planar-diagram text: `X(a,b,c,d)` tuples listing edge labels counterclockwise
//! from the incoming under-strand, `Loop(k)` for a crossingless component and,
//! for tangles, a trailer `NW=a NE=b SE=c SW=d`.

use std::collections::HashMap;

use super::link::LinkDiagram;
use super::map::{he, slot, straight, vertex, PlanarMap, CORNER_NAMES};
use super::tangle::TangleDiagram;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Token {
    Crossing([u64; 4]),
    Loop(u64),
    Corner(usize, u64),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
        if rest.is_empty() {
            return Ok(out);
        }
        if let Some(eq) = corner_prefix(rest) {
            let (name, tail) = rest.split_at(eq);
            let tail = &tail[1..];
            let end = tail.find(|c: char| !c.is_ascii_digit()).unwrap_or(tail.len());
            let label = tail[..end]
                .parse::<u64>()
                .map_err(|_| Error::MalformedCorner(format!("{name}={}", &tail[..end])))?;
            let k = CORNER_NAMES.iter().position(|&n| n == name).unwrap();
            out.push(Token::Corner(k, label));
            rest = &tail[end..];
            continue;
        }
        let close = rest.find(')');
        let token_end = close.map(|i| i + 1).unwrap_or(rest.len());
        let token = &rest[..token_end];
        out.push(parse_tuple(token)?);
        rest = &rest[token_end..];
    }
}

fn corner_prefix(s: &str) -> Option<usize> {
    CORNER_NAMES
        .iter()
        .find(|n| s.starts_with(*n) && s[n.len()..].starts_with('='))
        .map(|n| n.len())
}

fn parse_tuple(token: &str) -> Result<Token> {
    let malformed = || Error::MalformedTuple(token.trim().to_string());
    let open = token.find('(').ok_or_else(malformed)?;
    if !token.ends_with(')') {
        return Err(malformed());
    }
    let head = token[..open].trim();
    let labels: Vec<u64> = token[open + 1..token.len() - 1]
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| malformed())?;
    if labels.contains(&0) {
        return Err(malformed());
    }
    match (head, labels.as_slice()) {
        ("X", &[a, b, c, d]) => Ok(Token::Crossing([a, b, c, d])),
        ("Loop", &[k]) => Ok(Token::Loop(k)),
        _ => Err(malformed()),
    }
}

/// Pairs up half-edges sharing a label; `slots` lists each label occurrence
/// by half-edge index.
fn pair_labels(slots: &[(usize, u64)], loops: &[u64], len: usize) -> Result<Vec<usize>> {
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    for &(h, l) in slots {
        seen.entry(l).or_default().push(h);
    }
    for &l in loops {
        if let Some(hs) = seen.get(&l) {
            return Err(Error::OverusedEdge {
                label: l,
                count: hs.len() + 1,
            });
        }
    }
    let mut loop_count: HashMap<u64, usize> = HashMap::new();
    for &l in loops {
        *loop_count.entry(l).or_default() += 1;
    }
    if let Some((&label, &count)) = loop_count.iter().filter(|(_, &n)| n > 1).min() {
        return Err(Error::OverusedEdge { label, count });
    }
    let mut labels: Vec<_> = seen.into_iter().collect();
    labels.sort_unstable_by_key(|(l, _)| *l);
    let mut pair = vec![usize::MAX; len];
    for (label, hs) in labels {
        match hs.len() {
            1 => return Err(Error::DanglingEdge(label)),
            2 => {
                pair[hs[0]] = hs[1];
                pair[hs[1]] = hs[0];
            }
            count => return Err(Error::OverusedEdge { label, count }),
        }
    }
    Ok(pair)
}

fn check_spherical(map: &PlanarMap, label_of: &[u64]) -> Result<()> {
    map.check_spherical().map_err(|(h, euler)| Error::NotSpherical {
        label: label_of[h],
        euler,
    })
}

/// Parses PD text into a link diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let tokens = tokenize(text)?;
    let mut tuples = Vec::new();
    let mut loops = Vec::new();
    for t in tokens {
        match t {
            Token::Crossing(x) => tuples.push(x),
            Token::Loop(k) => loops.push(k),
            Token::Corner(k, l) => return Err(Error::MalformedCorner(format!("{}={l}", CORNER_NAMES[k]))),
        }
    }
    let c = tuples.len();
    let label_of: Vec<u64> = tuples.iter().flatten().copied().collect();
    let slots: Vec<(usize, u64)> = label_of.iter().copied().enumerate().collect();
    let pair = pair_labels(&slots, &loops, 4 * c)?;
    let map = PlanarMap {
        pair,
        crossings: c,
        boundary: false,
        free_loops: loops.len(),
    };
    check_spherical(&map, &label_of)?;
    let incoming = orient(&map, &label_of)?;
    let (link, rotated) = LinkDiagram::from_orientation(map, &incoming);
    debug_assert!(rotated.iter().all(|r| !r));
    Ok(link)
}

#[derive(Clone, Copy, PartialEq)]
enum Dir {
    Unknown,
    In,
    Out,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
            Dir::Unknown => Dir::Unknown,
        }
    }
}

/// Orients every strand. Strands with an under-passage follow the tuples;
/// a strand that only passes over is oriented so that its labels increase,
/// starting from its smallest label.
fn orient(map: &PlanarMap, label_of: &[u64]) -> Result<Vec<bool>> {
    let n = map.pair.len();
    let mut dir = vec![Dir::Unknown; n];
    let mut stack = Vec::new();
    let set = |dir: &mut Vec<Dir>, stack: &mut Vec<usize>, h: usize, d: Dir| -> Result<()> {
        match dir[h] {
            Dir::Unknown => {
                dir[h] = d;
                stack.push(h);
                Ok(())
            }
            x if x == d => Ok(()),
            _ => Err(Error::InconsistentOrientation(label_of[h])),
        }
    };
    for v in 0..map.crossings {
        set(&mut dir, &mut stack, he(v, 0), Dir::In)?;
        set(&mut dir, &mut stack, he(v, 2), Dir::Out)?;
    }
    let propagate = |dir: &mut Vec<Dir>, stack: &mut Vec<usize>| -> Result<()> {
        while let Some(h) = stack.pop() {
            let d = dir[h];
            set(dir, stack, map.pair[h], d.flip())?;
            set(dir, stack, straight(h), d.flip())?;
        }
        Ok(())
    };
    propagate(&mut dir, &mut stack)?;
    for strand in map.strands() {
        let first = strand.departures[0];
        if dir[first] != Dir::Unknown {
            continue;
        }
        // edges of this strand in trace order, by label
        let edge_labels: Vec<u64> = strand.departures.iter().map(|&d| label_of[d]).collect();
        let forward = over_strand_forward(&strand.departures, &edge_labels, map);
        set(&mut dir, &mut stack, first, if forward { Dir::Out } else { Dir::In })?;
        propagate(&mut dir, &mut stack)?;
    }
    Ok(dir.iter().map(|&d| d == Dir::In).collect())
}

/// Whether the traced direction of an over-only strand is the one in which
/// labels increase. Length-one strands enter their crossing through slot 3;
/// on length-two strands the smaller label leaves the lower-numbered crossing.
fn over_strand_forward(departures: &[usize], labels: &[u64], map: &PlanarMap) -> bool {
    let r = labels.len();
    match r {
        1 => slot(map.pair[departures[0]]) == 3,
        2 => {
            let i = if labels[0] <= labels[1] { 0 } else { 1 };
            vertex(departures[i]) < vertex(map.pair[departures[i]])
        }
        _ => {
            let m = (0..r).min_by_key(|&i| labels[i]).unwrap();
            labels[(m + 1) % r] < labels[(m + r - 1) % r]
        }
    }
}

/// Parses the tangle text format.
pub fn parse_tangle(text: &str) -> Result<TangleDiagram> {
    let tokens = tokenize(text)?;
    let mut tuples = Vec::new();
    let mut loops = Vec::new();
    let mut corners: [Option<u64>; 4] = [None; 4];
    for t in tokens {
        match t {
            Token::Crossing(x) => tuples.push(x),
            Token::Loop(k) => loops.push(k),
            Token::Corner(k, l) => {
                if corners[k].replace(l).is_some() {
                    return Err(Error::DuplicateCorner(CORNER_NAMES[k]));
                }
            }
        }
    }
    let c = tuples.len();
    let mut label_of: Vec<u64> = tuples.iter().flatten().copied().collect();
    for (k, l) in corners.iter().enumerate() {
        label_of.push(l.ok_or(Error::MissingCorner(CORNER_NAMES[k]))?);
    }
    let slots: Vec<(usize, u64)> = label_of.iter().copied().enumerate().collect();
    let pair = pair_labels(&slots, &loops, 4 * (c + 1))?;
    let map = PlanarMap {
        pair,
        crossings: c,
        boundary: true,
        free_loops: loops.len(),
    };
    check_spherical(&map, &label_of)?;
    Ok(TangleDiagram::from_map(map))
}
