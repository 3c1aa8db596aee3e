//! PACE 2017 `.td` files: `s td <bags> <width+1> <n>`, `b <id> <v...>`,
//! tree edges `<id> <id>`, comments `c ...`, all 1-indexed.

use std::fmt::Write as _;
use std::path::Path;

use super::TreeDecomposition;
use crate::error::{Error, Result};

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a number, found {tok:?}"),
    })
}

pub fn read_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line, msg };
        match toks.first() {
            None | Some(&"c") => {}
            Some(&"s") => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(err("header must be `s td <bags> <width+1> <n>`".into()));
                }
                if header.is_some() {
                    return Err(err("duplicate header".into()));
                }
                let nb = parse_num(toks[2], line)?;
                header = Some((nb, parse_num(toks[4], line)?));
                bags = vec![None; nb];
            }
            Some(&"b") => {
                let (nb, n) = header.ok_or_else(|| err("bag before header".into()))?;
                let id = parse_num(toks.get(1).ok_or_else(|| err("missing bag id".into()))?, line)?;
                if id == 0 || id > nb {
                    return Err(err(format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(err(format!("bag {id} listed twice")));
                }
                let mut verts = Vec::with_capacity(toks.len() - 2);
                for t in &toks[2..] {
                    let v = parse_num(t, line)?;
                    if v == 0 || v > n {
                        return Err(err(format!("vertex {v} out of range")));
                    }
                    verts.push(v - 1);
                }
                bags[id - 1] = Some(verts);
            }
            Some(_) => {
                let (nb, _) = header.ok_or_else(|| err("edge before header".into()))?;
                if toks.len() != 2 {
                    return Err(err("tree edge must be `<id> <id>`".into()));
                }
                let (a, b) = (parse_num(toks[0], line)?, parse_num(toks[1], line)?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(err(format!("tree edge ({a}, {b}) out of range")));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, n) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `s td` header".into(),
    })?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or(Error::Parse {
                line: 0,
                msg: format!("bag {} missing", i + 1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TreeDecomposition::new(n, bags, &edges)
}

pub fn read_td_file(path: &Path) -> Result<TreeDecomposition> {
    read_td(&std::fs::read_to_string(path)?)
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "s td {} {} {}", td.num_bags(), td.max_bag_size(), td.n());
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in bag {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    for (p, c) in td.tree_edges() {
        let _ = writeln!(s, "{} {}", p + 1, c + 1);
    }
    s
}
