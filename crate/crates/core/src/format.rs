//! Line-oriented instance and move files.
//!
//! ```text
//! # comments and blank lines are ignored
//! tree 4              # or: graph <n> | intervals <n>
//! 0 1                 # edges (tree/graph) ...
//! 1 2
//! 2 3
//! tokens 2: 0 2       # source configuration; repeats stack
//! tokens 2: 1 3       # target configuration
//! ```
//!
//! Interval instances list one `id left right` line per vertex instead of
//! edges. Move files are `moves <m>` followed by `m` lines `from to count`.
//! [`emit_instance`] writes the canonical form: no comments, intervals in id
//! order, token lists sorted.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::graph::{Graph, RootedTree};
use crate::interval::{normalize_representation, IntervalRepresentation};
use crate::moves::{Move, MoveSequence};
use crate::multiset::TokenMultiset;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Tree,
    Graph,
    Intervals,
}

impl StructureKind {
    fn keyword(self) -> &'static str {
        match self {
            StructureKind::Tree => "tree",
            StructureKind::Graph => "graph",
            StructureKind::Intervals => "intervals",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Tree {
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
    },
    Graph {
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
    },
    /// Raw closed intervals; endpoints may coincide.
    Intervals(Vec<(i64, i64)>),
}

impl Structure {
    pub fn kind(&self) -> StructureKind {
        match self {
            Structure::Tree { .. } => StructureKind::Tree,
            Structure::Graph { .. } => StructureKind::Graph,
            Structure::Intervals(_) => StructureKind::Intervals,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Structure::Tree { n, .. } | Structure::Graph { n, .. } => *n,
            Structure::Intervals(iv) => iv.len(),
        }
    }
}

/// A structure plus source and target configurations of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub structure: Structure,
    pub sources: TokenMultiset,
    pub targets: TokenMultiset,
}

impl Instance {
    pub fn graph(&self) -> Result<Graph, Error> {
        match &self.structure {
            Structure::Tree { n, edges } | Structure::Graph { n, edges } => Graph::new(*n, edges),
            Structure::Intervals(_) => {
                Ok(crate::interval::intersection_graph(&self.representation()?))
            }
        }
    }

    pub fn representation(&self) -> Result<IntervalRepresentation, Error> {
        match &self.structure {
            Structure::Intervals(raw) => normalize_representation(raw),
            _ => Err(Error::Input(
                "instance has no interval representation".into(),
            )),
        }
    }

    pub fn rooted_tree(&self, root: Vertex) -> Result<RootedTree, Error> {
        RootedTree::new(self.graph()?, root)
    }
}

struct Line<'a> {
    number: usize,
    words: Vec<(usize, &'a str)>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut words = Vec::new();
            let mut start = None;
            for (j, ch) in body
                .char_indices()
                .chain(std::iter::once((body.len(), ' ')))
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        words.push((s + 1, &body[s..j]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (!words.is_empty()).then_some(Line {
                number: i + 1,
                words,
            })
        })
        .collect()
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(
    line: &Line<'_>,
    index: usize,
    what: &str,
) -> Result<T, FormatError> {
    let end = line.words.last().map_or(1, |(c, w)| c + w.len());
    let (column, word) = line
        .words
        .get(index)
        .copied()
        .ok_or_else(|| syntax(line.number, end, format!("expected {what}")))?;
    word.parse().map_err(|_| {
        syntax(
            line.number,
            column,
            format!("expected {what}, found `{word}`"),
        )
    })
}

fn expect_len(line: &Line<'_>, len: usize, shape: &str) -> Result<(), FormatError> {
    if line.words.len() != len {
        let column = line.words.get(len).map_or(1, |w| w.0);
        return Err(syntax(line.number, column, format!("expected `{shape}`")));
    }
    Ok(())
}

fn parse_tokens(line: &Line<'_>, n: usize) -> Result<TokenMultiset, FormatError> {
    let (_, count_word) = *line
        .words
        .get(1)
        .ok_or_else(|| syntax(line.number, 1, "expected `tokens <k>: ...`"))?;
    let column = line.words[1].0;
    let count: usize = count_word
        .strip_suffix(':')
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| {
            syntax(
                line.number,
                column,
                format!("expected `<k>:`, found `{count_word}`"),
            )
        })?;
    let listed = line.words.len() - 2;
    if listed != count {
        return Err(syntax(
            line.number,
            column,
            format!("token count says {count} but {listed} vertices are listed"),
        ));
    }
    let mut m = TokenMultiset::new(n);
    for i in 2..line.words.len() {
        let v: Vertex = number(line, i, "vertex id")?;
        if v >= n {
            return Err(syntax(
                line.number,
                line.words[i].0,
                format!("vertex {v} outside 0..{n}"),
            ));
        }
        m.add(v, 1);
    }
    Ok(m)
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let lines = lines(text);
    let Some(header) = lines.first() else {
        return Err(syntax(1, 1, "empty instance"));
    };
    expect_len(header, 2, "<tree|graph|intervals> <n>")?;
    let kind = match header.words[0].1 {
        "tree" => StructureKind::Tree,
        "graph" => StructureKind::Graph,
        "intervals" => StructureKind::Intervals,
        other => {
            return Err(syntax(
                header.number,
                header.words[0].0,
                format!("unknown structure `{other}`"),
            ))
        }
    };
    let n: usize = number(header, 1, "vertex count")?;

    let body_end = lines
        .iter()
        .position(|l| l.words[0].1 == "tokens")
        .unwrap_or(lines.len());
    let body = &lines[1..body_end];
    let token_lines = &lines[body_end..];
    if token_lines.len() != 2 {
        let (line, column) = token_lines
            .get(2)
            .map_or((lines.last().unwrap().number + 1, 1), |l| (l.number, 1));
        return Err(syntax(line, column, "expected exactly two `tokens` lines"));
    }
    if let Some(stray) = token_lines.iter().find(|l| l.words[0].1 != "tokens") {
        return Err(syntax(
            stray.number,
            1,
            "unexpected line after token blocks",
        ));
    }

    let structure = match kind {
        StructureKind::Tree | StructureKind::Graph => {
            let mut edges = Vec::with_capacity(body.len());
            for line in body {
                expect_len(line, 2, "<u> <v>")?;
                let u: Vertex = number(line, 0, "vertex id")?;
                let v: Vertex = number(line, 1, "vertex id")?;
                for (i, x) in [(0, u), (1, v)] {
                    if x >= n {
                        return Err(syntax(
                            line.number,
                            line.words[i].0,
                            format!("vertex {x} outside 0..{n}"),
                        ));
                    }
                }
                edges.push((u, v));
            }
            if kind == StructureKind::Tree {
                Structure::Tree { n, edges }
            } else {
                Structure::Graph { n, edges }
            }
        }
        StructureKind::Intervals => {
            let mut slots: Vec<Option<(i64, i64)>> = vec![None; n];
            for line in body {
                expect_len(line, 3, "<id> <left> <right>")?;
                let id: Vertex = number(line, 0, "vertex id")?;
                let l: i64 = number(line, 1, "left endpoint")?;
                let r: i64 = number(line, 2, "right endpoint")?;
                let column = line.words[0].0;
                let slot = slots.get_mut(id).ok_or_else(|| {
                    syntax(line.number, column, format!("vertex {id} outside 0..{n}"))
                })?;
                if slot.is_some() {
                    return Err(syntax(
                        line.number,
                        column,
                        format!("interval {id} given twice"),
                    ));
                }
                if l > r {
                    return Err(syntax(
                        line.number,
                        line.words[1].0,
                        format!("left endpoint {l} > right {r}"),
                    ));
                }
                *slot = Some((l, r));
            }
            if let Some(missing) = slots.iter().position(Option::is_none) {
                return Err(FormatError::Semantic(Error::Input(format!(
                    "no interval given for vertex {missing}"
                ))));
            }
            Structure::Intervals(slots.into_iter().map(Option::unwrap).collect())
        }
    };

    let sources = parse_tokens(&token_lines[0], n)?;
    let targets = parse_tokens(&token_lines[1], n)?;
    let instance = Instance {
        structure,
        sources,
        targets,
    };
    if instance.sources.len() != instance.targets.len() {
        return Err(Error::Size {
            left: instance.sources.len(),
            right: instance.targets.len(),
        }
        .into());
    }
    match &instance.structure {
        Structure::Tree { .. } => {
            instance.rooted_tree(0)?;
        }
        Structure::Graph { .. } => {
            instance.graph()?;
        }
        Structure::Intervals(_) => {
            instance.representation()?;
        }
    }
    Ok(instance)
}

fn emit_tokens(out: &mut String, m: &TokenMultiset) {
    write!(out, "tokens {}:", m.len()).unwrap();
    for v in m.expand() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

pub fn emit_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let s = &instance.structure;
    writeln!(out, "{} {}", s.kind().keyword(), s.vertex_count()).unwrap();
    match s {
        Structure::Tree { edges, .. } | Structure::Graph { edges, .. } => {
            for (u, v) in edges {
                writeln!(out, "{u} {v}").unwrap();
            }
        }
        Structure::Intervals(iv) => {
            for (id, (l, r)) in iv.iter().enumerate() {
                writeln!(out, "{id} {l} {r}").unwrap();
            }
        }
    }
    emit_tokens(&mut out, &instance.sources);
    emit_tokens(&mut out, &instance.targets);
    out
}

pub fn parse_moves(text: &str) -> Result<MoveSequence, FormatError> {
    let lines = lines(text);
    let Some(header) = lines.first() else {
        return Err(syntax(1, 1, "expected `moves <m>`"));
    };
    expect_len(header, 2, "moves <m>")?;
    if header.words[0].1 != "moves" {
        return Err(syntax(header.number, 1, "expected `moves <m>`"));
    }
    let m: usize = number(header, 1, "move count")?;
    let body = &lines[1..];
    if body.len() != m {
        let line = body.get(m).map_or(header.number, |l| l.number);
        return Err(syntax(
            line,
            1,
            format!("header announces {m} moves, found {}", body.len()),
        ));
    }
    let mut seq = MoveSequence::new();
    for line in body {
        expect_len(line, 3, "<from> <to> <count>")?;
        let count: u64 = number(line, 2, "count")?;
        if count == 0 {
            return Err(syntax(
                line.number,
                line.words[2].0,
                "move count must be positive",
            ));
        }
        seq.push(Move::new(
            number(line, 0, "vertex id")?,
            number(line, 1, "vertex id")?,
            count,
        ));
    }
    Ok(seq)
}

pub fn emit_moves(seq: &MoveSequence) -> String {
    let mut out = format!("moves {}\n", seq.moves().len());
    for m in seq.moves() {
        writeln!(out, "{} {} {}", m.from, m.to, m.count).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P4: &str = "tree 4\n0 1\n1 2\n2 3\ntokens 2: 0 2\ntokens 2: 1 3\n";

    #[test]
    fn parses_tree_instance() {
        let inst = parse_instance(P4).unwrap();
        assert_eq!(
            inst.structure,
            Structure::Tree {
                n: 4,
                edges: vec![(0, 1), (1, 2), (2, 3)]
            }
        );
        assert_eq!(inst.sources.expand(), vec![0, 2]);
        assert_eq!(inst.targets.expand(), vec![1, 3]);
        assert_eq!(emit_instance(&inst), P4);
    }

    #[test]
    fn parses_intervals_with_comments() {
        let text = "# two intervals\nintervals 2\n\n0 1 4\n1 3 6  # overlapping\ntokens 1: 0\ntokens 1: 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.structure, Structure::Intervals(vec![(1, 4), (3, 6)]));
        assert_eq!(
            emit_instance(&inst),
            "intervals 2\n0 1 4\n1 3 6\ntokens 1: 0\ntokens 1: 1\n"
        );
    }

    #[test]
    fn token_count_mismatch_is_a_syntax_error() {
        let text = "tree 3\n0 1\n1 2\ntokens 2: 0\ntokens 1: 1\n";
        assert_eq!(
            parse_instance(text).unwrap_err(),
            FormatError::Syntax {
                line: 4,
                column: 8,
                message: "token count says 2 but 1 vertices are listed".into()
            }
        );
    }

    #[test]
    fn semantic_errors() {
        let sizes = "tree 2\n0 1\ntokens 1: 0\ntokens 2: 0 1\n";
        assert!(matches!(
            parse_instance(sizes),
            Err(FormatError::Semantic(Error::Size { .. }))
        ));
        let cycle = "tree 3\n0 1\n1 2\n2 0\ntokens 1: 0\ntokens 1: 1\n";
        assert!(matches!(
            parse_instance(cycle),
            Err(FormatError::Semantic(_))
        ));
        let range = "graph 2\n0 5\ntokens 1: 0\ntokens 1: 1\n";
        assert!(matches!(
            parse_instance(range),
            Err(FormatError::Syntax {
                line: 2,
                column: 3,
                ..
            })
        ));
        let missing = "intervals 2\n0 1 2\ntokens 1: 0\ntokens 1: 0\n";
        assert!(parse_instance(missing).is_err());
        assert!(parse_instance("").is_err());
        assert!(parse_instance("tree 1\ntokens 0:\n").is_err());
    }

    #[test]
    fn moves_round_trip() {
        let text = "moves 2\n0 1 1\n2 3 1\n";
        let seq = parse_moves(text).unwrap();
        assert_eq!(seq.total_length(), 2);
        assert_eq!(emit_moves(&seq), text);
        assert!(parse_moves("moves 2\n0 1 1\n").is_err());
        assert!(parse_moves("moves 1\n0 1 0\n").is_err());
    }
}
