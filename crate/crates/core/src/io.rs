//! The `dimer 1` text format.
//!
//! ```text
//! dimer 1
//! vertex 0 0.5 0.5
//! arrow x 0 0 (1,0)
//! face + x y z
//! ```
//!
//! `#` starts a comment. Vertex ids are dense and declared in order; the
//! layout point is optional but must be given for all vertices or none.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quiver::{validate, Arrow, ArrowId, DimerQuiver, Face, Homology, Orientation, VertexId};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_offset(line: usize, text: &str) -> Result<Homology> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("offset must look like (dx,dy), got {text:?}")))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| err(line, format!("offset must look like (dx,dy), got {text:?}")))?;
    let num = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| err(line, format!("bad offset component {s:?}")))
    };
    Ok(Homology::new(num(x)?, num(y)?))
}

/// Parses a quiver without checking the dimer invariants.
pub fn parse(text: &str) -> Result<DimerQuiver> {
    let mut header = false;
    let mut layout: Vec<Option<[f64; 2]>> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut names: HashMap<String, ArrowId> = HashMap::new();
    let mut faces: Vec<Face> = Vec::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !header {
            if tokens != ["dimer", "1"] {
                return Err(err(line, "expected header \"dimer 1\""));
            }
            header = true;
            continue;
        }
        match tokens[0] {
            "vertex" => {
                let id: usize = tokens
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line, "vertex needs a numeric id"))?;
                if id < layout.len() {
                    return Err(err(line, format!("duplicate vertex id {id}")));
                }
                if id != layout.len() {
                    return Err(err(
                        line,
                        format!("vertex ids must be dense: expected {}, got {id}", layout.len()),
                    ));
                }
                let point = match tokens.len() {
                    2 => None,
                    4 => {
                        let c = |t: &str| t.parse::<f64>().map_err(|_| err(line, format!("bad coordinate {t:?}")));
                        Some([c(tokens[2])?, c(tokens[3])?])
                    }
                    _ => return Err(err(line, "vertex takes an id and an optional x y")),
                };
                layout.push(point);
            }
            "arrow" => {
                if tokens.len() < 5 {
                    return Err(err(line, "arrow needs name, tail, head and (dx,dy)"));
                }
                let name = tokens[1].to_string();
                if names.contains_key(&name) {
                    return Err(err(line, format!("duplicate arrow name {name}")));
                }
                let end = |t: &str| -> Result<VertexId> {
                    let v: usize = t.parse().map_err(|_| err(line, format!("bad vertex id {t:?}")))?;
                    if v >= layout.len() {
                        return Err(err(line, format!("arrow {name} references undeclared vertex {v}")));
                    }
                    Ok(VertexId(v))
                };
                let tail = end(tokens[2])?;
                let head = end(tokens[3])?;
                let offset = parse_offset(line, &tokens[4..].join(""))?;
                names.insert(name.clone(), ArrowId(arrows.len()));
                arrows.push(Arrow {
                    name,
                    tail,
                    head,
                    offset,
                });
            }
            "face" => {
                let orientation = match tokens.get(1) {
                    Some(&"+") => Orientation::Plus,
                    Some(&"-") => Orientation::Minus,
                    _ => return Err(err(line, "face orientation must be + or -")),
                };
                if tokens.len() < 3 {
                    return Err(err(line, "face needs at least one arrow"));
                }
                let ids = tokens[2..]
                    .iter()
                    .map(|t| {
                        names
                            .get(*t)
                            .copied()
                            .ok_or_else(|| err(line, format!("face references undeclared arrow {t}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                faces.push(Face::new(orientation, ids));
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    if !header {
        return Err(err(last_line.max(1), "missing header \"dimer 1\""));
    }
    let n = layout.len();
    let with_points = layout.iter().filter(|p| p.is_some()).count();
    let layout = if with_points == 0 {
        None
    } else if with_points == layout.len() {
        Some(layout.into_iter().flatten().collect())
    } else {
        return Err(err(last_line, "layout points must be given for all vertices or none"));
    };
    Ok(DimerQuiver::new(n, arrows, faces, layout))
}

/// Parses and validates.
pub fn parse_valid(text: &str) -> Result<DimerQuiver> {
    let q = parse(text)?;
    let report = validate(&q);
    if report.is_valid() {
        Ok(q)
    } else {
        Err(Error::InvalidQuiver(report))
    }
}

/// Canonical text form; `parse(serialize(q)) == q`.
pub fn serialize(q: &DimerQuiver) -> String {
    let mut out = String::from("dimer 1\n");
    for v in q.vertices() {
        match q.layout() {
            Some(points) => {
                let [x, y] = points[v.0];
                writeln!(out, "vertex {} {x} {y}", v.0).unwrap();
            }
            None => writeln!(out, "vertex {}", v.0).unwrap(),
        }
    }
    for a in q.arrows() {
        writeln!(out, "arrow {} {} {} {}", a.name, a.tail.0, a.head.0, a.offset).unwrap();
    }
    for f in q.faces() {
        let names: Vec<&str> = f.arrows.iter().map(|&a| q.arrow_name(a)).collect();
        writeln!(out, "face {} {}", f.orientation.symbol(), names.join(" ")).unwrap();
    }
    out
}
