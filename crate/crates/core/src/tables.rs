//! Staircase tables: the grid `t_{x,y} = x X_{i+2} + y X_{i+k}` with each
//! Apéry element marked by its level (`q + 1` for `Ap(X_i; q)`).
//!
//! Levels come from Apéry membership computed by the oracle, not from the
//! block-shifting rules, so the picture can be used to check those rules.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::apery::SemigroupOracle;
use crate::closed_forms::{params, TripleParams};
use crate::compute::family_tuple;
use crate::error::{Error, Result};
use crate::sequences::SequenceKind;

/// Largest grid (before trimming) a table may span.
pub const MAX_GRID_CELLS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: u64,
    pub y: u64,
    pub value: u64,
    pub residue: u64,
    pub level: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    /// 1-based; holds `Ap(X_i; level - 1)`.
    pub level: u32,
    /// Sorted ascending.
    pub elements: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    pub params: TripleParams,
    pub levels: Vec<Level>,
    /// Columns, rows and the row-major cells of the trimmed grid.
    pub width: u64,
    pub height: u64,
    pub cells: Vec<Cell>,
    /// Columns per block (`F_k`).
    pub block: u64,
    /// Apéry elements with no cell inside the search grid, as `(level, value)`.
    pub unplaced: Vec<(u32, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Value,
    Residue,
    Level,
}

impl FromStr for RenderMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "value" => Ok(RenderMode::Value),
            "residue" => Ok(RenderMode::Residue),
            "level" => Ok(RenderMode::Level),
            other => Err(format!("unknown render mode `{other}` (expected value, residue or level)")),
        }
    }
}

impl RenderMode {
    fn name(self) -> &'static str {
        match self {
            RenderMode::Value => "value",
            RenderMode::Residue => "residue",
            RenderMode::Level => "level",
        }
    }
}

fn small(v: &num_bigint::BigUint, what: &str) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::TooLarge(what.to_string()))
}

/// Table with levels `1..=p_max + 1`.
pub fn build_table(kind: SequenceKind, i: u32, k: u32, p_max: u32) -> Result<ResidueTable> {
    build_levels(kind, i, k, p_max + 1)
}

/// Table with `levels` levels; `levels = 0` gives an empty grid.
pub fn build_levels(kind: SequenceKind, i: u32, k: u32, levels: u32) -> Result<ResidueTable> {
    let params = params(kind, i, k, levels.saturating_sub(1))?;
    let tuple = family_tuple(&params)?;
    let xi = tuple.a1();
    let x2 = small(&params.x_i2, "X_{i+2}")?;
    let xk = small(&params.x_ik, "X_{i+k}")?;
    let block = small(&params.f_k, "F_k")?;
    let r = small(&params.r, "r")?;
    let mut table = ResidueTable { params, levels: Vec::new(), width: 0, height: 0, cells: Vec::new(), block, unplaced: Vec::new() };
    if levels == 0 {
        return Ok(table);
    }
    let p_max = u64::from(levels - 1);

    let oracle = SemigroupOracle::new(&tuple, p_max)?;
    let mut level_of = HashMap::new();
    let mut top = 0;
    for q in 0..=p_max {
        let set = oracle.apery_set(q)?;
        for &m in set.elements() {
            level_of.insert(m, q as u32 + 1);
        }
        top = top.max(set.max());
        table.levels.push(Level { level: q as u32 + 1, elements: set.sorted() });
    }

    // cells beyond the largest element cannot carry a level
    let cols = ((p_max + 2).checked_mul(block)).ok_or_else(|| Error::TooLarge("grid width".into()))?.min(top / x2 + 1);
    let rows = (r + p_max + 3).min(top / xk + 1);
    if cols.saturating_mul(rows) > MAX_GRID_CELLS {
        return Err(Error::TooLarge(format!("{cols}x{rows} table grid")));
    }

    let mut placed: HashMap<u64, (u64, u64)> = HashMap::new();
    for y in 0..rows {
        for x in 0..cols {
            let v = x * x2 + y * xk;
            if level_of.contains_key(&v) {
                placed.entry(v).or_insert((x, y));
            }
        }
    }
    for lvl in &table.levels {
        for &m in &lvl.elements {
            if !placed.contains_key(&m) {
                table.unplaced.push((lvl.level, m));
            }
        }
    }
    let (w, h) = placed.values().fold((0, 0), |(w, h), &(x, y)| (w.max(x + 1), h.max(y + 1)));
    table.width = w;
    table.height = h;
    for y in 0..h {
        for x in 0..w {
            let value = x * x2 + y * xk;
            let level = match placed.get(&value) {
                Some(&pos) if pos == (x, y) => level_of.get(&value).copied(),
                _ => None,
            };
            table.cells.push(Cell { x, y, value, residue: value % xi, level });
        }
    }
    Ok(table)
}

impl ResidueTable {
    pub fn cell(&self, x: u64, y: u64) -> Option<&Cell> {
        (x < self.width && y < self.height).then(|| &self.cells[(y * self.width + x) as usize])
    }

    pub fn annotated(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.level.is_some())
    }
}

fn circled(level: u32) -> String {
    match level {
        1..=20 => char::from_u32(0x2460 + level - 1).map(String::from).unwrap_or_default(),
        _ => format!("({level})"),
    }
}

fn header(table: &ResidueTable, mode: RenderMode) -> String {
    let p = &table.params;
    format!(
        "# {} i={} k={} gens=({},{},{}) r={} ell={} levels={} mode={}",
        p.kind,
        p.i,
        p.k,
        p.x_i,
        p.x_i2,
        p.x_ik,
        p.r,
        p.ell,
        table.levels.len(),
        mode.name()
    )
}

/// Fixed-width text grid, one line per row `y`, blocks of `F_k` columns
/// separated by `|`. Unmarked cells are blank.
pub fn render_ascii(table: &ResidueTable, mode: RenderMode) -> String {
    let label = |c: &Cell| match (mode, c.level) {
        (_, None) => String::new(),
        (RenderMode::Value, _) => c.value.to_string(),
        (RenderMode::Residue, _) => c.residue.to_string(),
        (RenderMode::Level, Some(l)) => circled(l),
    };
    let width = table.annotated().map(|c| label(c).chars().count()).max().unwrap_or(1);
    let mut out = header(table, mode);
    out.push('\n');
    for y in 0..table.height {
        let mut line = String::new();
        for x in 0..table.width {
            if x > 0 {
                line.push(' ');
            }
            let cell = table.cell(x, y).expect("cell inside grid");
            let _ = write!(line, "{:>width$}", label(cell));
            if (x + 1) % table.block == 0 && x + 1 < table.width {
                line.push_str(" |");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// JSON document with `params`, `levels` and `cells`; keys come out sorted.
pub fn export_json(table: &ResidueTable) -> Value {
    let p = &table.params;
    let num = |v: &num_bigint::BigUint| -> Value { Value::Number(v.to_string().parse().expect("integer literal")) };
    json!({
        "params": {
            "kind": p.kind.short_name(),
            "i": p.i,
            "k": p.k,
            "x_i": num(&p.x_i),
            "x_i2": num(&p.x_i2),
            "x_ik": num(&p.x_ik),
            "f_k": num(&p.f_k),
            "r": num(&p.r),
            "ell": num(&p.ell),
        },
        "width": table.width,
        "height": table.height,
        "block": table.block,
        "levels": table.levels.iter().map(|l| json!({
            "level": l.level,
            "p": l.level - 1,
            "elements": l.elements,
        })).collect::<Vec<_>>(),
        "cells": table.cells.iter().map(|c| json!({
            "x": c.x,
            "y": c.y,
            "value": c.value,
            "residue": c.residue,
            "level": c.level,
        })).collect::<Vec<_>>(),
        "unplaced": table.unplaced.iter().map(|&(level, value)| json!({"level": level, "value": value})).collect::<Vec<_>>(),
    })
}
