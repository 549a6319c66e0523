use std::fmt::{self, Write as _};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TRACE_HEADER: &str = "sectionkit-trace 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    ReduceProjections,
    ReduceKernels,
    ReduceH,
    FindT,
    Assemble,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::ReduceProjections => "reduce-projections",
            Stage::ReduceKernels => "reduce-kernels",
            Stage::ReduceH => "reduce-h",
            Stage::FindT => "find-t",
            Stage::Assemble => "assemble",
        }
    }

    pub fn parse(s: &str) -> Option<Stage> {
        [
            Stage::ReduceProjections,
            Stage::ReduceKernels,
            Stage::ReduceH,
            Stage::FindT,
            Stage::Assemble,
        ]
        .into_iter()
        .find(|st| st.name() == s)
    }
}

/// Orders of `X`, `Y`, `G`, `H` at a stage boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orders {
    pub x: u64,
    pub y: u64,
    pub g: u64,
    pub h: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: Stage,
    pub before: Orders,
    pub after: Orders,
    /// `(key, value)` pairs in the order the decisions were taken.
    pub decisions: Vec<(String, String)>,
}

impl StageRecord {
    pub fn decision(&self, key: &str) -> Option<&str> {
        self.decisions
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PipelineTrace {
    pub stages: Vec<StageRecord>,
}

impl PipelineTrace {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(TRACE_HEADER);
        out.push('\n');
        for s in &self.stages {
            let (b, a) = (s.before, s.after);
            writeln!(out, "stage {}", s.stage.name()).unwrap();
            writeln!(
                out,
                "orders {} {} {} {} -> {} {} {} {}",
                b.x, b.y, b.g, b.h, a.x, a.y, a.g, a.h
            )
            .unwrap();
            for (k, v) in &s.decisions {
                writeln!(out, "decide {k} {v}").unwrap();
            }
            out.push_str("end\n");
        }
        out
    }

    /// Hex SHA-256 of the rendered trace.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.render().as_bytes()))
    }

    pub fn parse(text: &str) -> Result<PipelineTrace> {
        let err = |line: usize, column: usize, message: &str| Error::Parse {
            line,
            column,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        match lines.next() {
            Some((_, TRACE_HEADER)) => {}
            Some((n, _)) => return Err(err(n, 1, "expected trace header")),
            None => return Err(err(1, 1, "empty trace")),
        }
        let mut stages = Vec::new();
        let mut current: Option<StageRecord> = None;
        for (n, line) in lines {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, rest) = line.split_once(' ').unwrap_or((line, ""));
            match (word, current.as_mut()) {
                ("stage", None) => {
                    let stage = Stage::parse(rest).ok_or_else(|| err(n, 7, "unknown stage"))?;
                    let zero = Orders {
                        x: 0,
                        y: 0,
                        g: 0,
                        h: 0,
                    };
                    current = Some(StageRecord {
                        stage,
                        before: zero,
                        after: zero,
                        decisions: Vec::new(),
                    });
                }
                ("orders", Some(rec)) => {
                    let (b, a) = rest
                        .split_once(" -> ")
                        .ok_or_else(|| err(n, 8, "expected `before -> after`"))?;
                    rec.before = parse_orders(b).ok_or_else(|| err(n, 8, "bad orders"))?;
                    rec.after = parse_orders(a).ok_or_else(|| err(n, 8, "bad orders"))?;
                }
                ("decide", Some(rec)) => {
                    let (k, v) = rest.split_once(' ').unwrap_or((rest, ""));
                    if k.is_empty() {
                        return Err(err(n, 8, "missing decision key"));
                    }
                    rec.decisions.push((k.to_string(), v.to_string()));
                }
                ("end", Some(_)) => stages.push(current.take().unwrap()),
                _ => return Err(err(n, 1, "unexpected line")),
            }
        }
        if current.is_some() {
            return Err(err(text.lines().count(), 1, "unterminated stage"));
        }
        Ok(PipelineTrace { stages })
    }
}

fn parse_orders(s: &str) -> Option<Orders> {
    let v: Vec<u64> = s
        .split_whitespace()
        .map(|t| t.parse().ok())
        .collect::<Option<_>>()?;
    match v[..] {
        [x, y, g, h] => Some(Orders { x, y, g, h }),
        _ => None,
    }
}

impl fmt::Display for PipelineTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        let o = Orders {
            x: 18,
            y: 18,
            g: 18,
            h: 1,
        };
        let t = PipelineTrace {
            stages: vec![StageRecord {
                stage: Stage::FindT,
                before: o,
                after: o,
                decisions: vec![("j".into(), "0".into()), ("t".into(), "(0 1 2)".into())],
            }],
        };
        let text = t.render();
        assert_eq!(PipelineTrace::parse(&text).unwrap(), t);
        assert_eq!(t.digest().len(), 64);
        assert!(PipelineTrace::parse("bogus\n").is_err());
        assert!(PipelineTrace::parse(&text.replace("end\n", "")).is_err());
    }
}
