use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Map, Value};

use crate::GenTreeError;

pub const DEFAULT_LABEL_CAP: u32 = 1 << 24;

/// A label value with a color tag; tag `0` is the plain color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredLabel {
    pub value: u32,
    pub color: u8,
}

impl ColoredLabel {
    pub fn plain(value: u32) -> Self {
        ColoredLabel { value, color: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelExpr {
    Const(u32),
    /// Parent label plus an offset.
    Parent(i64),
}

impl LabelExpr {
    pub(crate) fn eval(self, k: u32) -> Result<u32, GenTreeError> {
        match self {
            LabelExpr::Const(c) => Ok(c),
            LabelExpr::Parent(d) => {
                let v = k as i64 + d;
                u32::try_from(v).map_err(|_| GenTreeError::Inconsistent(format!("label {k}{d:+} out of range")))
            }
        }
    }

    fn upper(self, k: u32) -> u64 {
        match self {
            LabelExpr::Const(c) => c as u64,
            LabelExpr::Parent(d) => (k as i64 + d).max(0) as u64,
        }
    }
}

/// One entry of a children template, evaluated at the parent label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChildItem {
    Single { value: LabelExpr, color: u8 },
    /// Plain labels `lo..=hi`, empty when `lo > hi`.
    Range { lo: LabelExpr, hi: LabelExpr },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Av1423_4123,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Av1423_4123 => "av1423_4123",
        }
    }

    fn template(self) -> Vec<ChildItem> {
        match self {
            // (k) -> (k+1)^B, (3), ..., (k), (k+1)^T
            Builtin::Av1423_4123 => vec![
                ChildItem::Single { value: LabelExpr::Parent(1), color: 1 },
                ChildItem::Range { lo: LabelExpr::Const(3), hi: LabelExpr::Parent(0) },
                ChildItem::Single { value: LabelExpr::Parent(1), color: 2 },
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Children {
    Builtin(Builtin),
    /// Same template for every label.
    Template(Vec<ChildItem>),
    /// Explicit children for finitely many labels.
    Table(BTreeMap<u32, Vec<ColoredLabel>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessionRule {
    pub root: u32,
    pub children: Children,
    /// Color names by tag; tag 0 is `""`.
    pub colors: Vec<String>,
    pub label_cap: u32,
}

impl SuccessionRule {
    pub fn av1423_4123() -> Self {
        SuccessionRule {
            root: 2,
            children: Children::Builtin(Builtin::Av1423_4123),
            colors: vec![String::new(), "B".into(), "T".into()],
            label_cap: DEFAULT_LABEL_CAP,
        }
    }

    pub fn template(root: u32, items: Vec<ChildItem>, colors: Vec<String>) -> Self {
        SuccessionRule { root, children: Children::Template(items), colors, label_cap: DEFAULT_LABEL_CAP }
    }

    pub fn table(root: u32, table: BTreeMap<u32, Vec<ColoredLabel>>, colors: Vec<String>) -> Self {
        SuccessionRule { root, children: Children::Table(table), colors, label_cap: DEFAULT_LABEL_CAP }
    }

    fn items(&self) -> Option<Vec<ChildItem>> {
        match &self.children {
            Children::Builtin(b) => Some(b.template()),
            Children::Template(t) => Some(t.clone()),
            Children::Table(_) => None,
        }
    }

    fn check_cap(&self, v: u64) -> Result<(), GenTreeError> {
        if v > self.label_cap as u64 {
            return Err(GenTreeError::LabelCap { label: v, cap: self.label_cap });
        }
        Ok(())
    }

    /// Children of `k` in order.
    pub fn children_of(&self, k: u32) -> Result<Vec<ColoredLabel>, GenTreeError> {
        let out = match &self.children {
            Children::Table(t) => t.get(&k).cloned().ok_or(GenTreeError::UnknownLabel(k))?,
            _ => {
                let mut out = Vec::new();
                for it in self.items().unwrap() {
                    match it {
                        ChildItem::Single { value, color } => out.push(ColoredLabel { value: value.eval(k)?, color }),
                        ChildItem::Range { lo, hi } => {
                            let (a, b) = (lo.eval(k)?, hi.eval(k)?);
                            out.extend((a..=b).map(ColoredLabel::plain));
                        }
                    }
                }
                out
            }
        };
        for c in &out {
            self.check_cap(c.value as u64)?;
        }
        Ok(out)
    }

    pub(crate) fn ranges(&self) -> Option<Vec<ChildItem>> {
        self.items()
    }

    /// Upper bound on the labels at levels `1..=n`, as `bound[level - 1]`.
    pub fn level_bounds(&self, n: usize) -> Result<Vec<u32>, GenTreeError> {
        self.check_cap(self.root as u64)?;
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return Ok(out);
        }
        out.push(self.root);
        match self.items() {
            Some(items) => {
                for _ in 1..n {
                    let m = *out.last().unwrap();
                    let mut b = 0u64;
                    for it in &items {
                        let u = match it {
                            ChildItem::Single { value, .. } => value.upper(m),
                            ChildItem::Range { hi, .. } => hi.upper(m),
                        };
                        b = b.max(u);
                    }
                    self.check_cap(b)?;
                    out.push(b as u32);
                }
            }
            None => {
                let mut level: BTreeSet<u32> = [self.root].into();
                for _ in 1..n {
                    let mut next = BTreeSet::new();
                    for &k in &level {
                        next.extend(self.children_of(k)?.into_iter().map(|c| c.value));
                    }
                    level = next;
                    out.push(level.last().copied().unwrap_or(0));
                }
            }
        }
        Ok(out)
    }

    pub fn color_name(&self, tag: u8) -> &str {
        self.colors.get(tag as usize).map(String::as_str).unwrap_or("?")
    }

    pub fn format_label(&self, c: ColoredLabel) -> String {
        let name = self.color_name(c.color);
        if name.is_empty() {
            c.value.to_string()
        } else {
            format!("{}^{}", c.value, name)
        }
    }

    pub fn color_tag(&self, name: &str) -> Option<u8> {
        self.colors.iter().position(|c| c == name).map(|p| p as u8)
    }

    pub fn from_json(s: &str) -> Result<Self, GenTreeError> {
        let v: Value = serde_json::from_str(s).map_err(|e| GenTreeError::Parse(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| GenTreeError::Parse("expected an object".into()))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "root" | "children" | "label_cap") {
                return Err(GenTreeError::Parse(format!("unknown field {k}")));
            }
        }
        let root = obj.get("root").and_then(Value::as_u64).ok_or_else(|| GenTreeError::Parse("missing root".into()))?;
        let root = u32::try_from(root).map_err(|_| GenTreeError::Parse("root too large".into()))?;
        let cap = match obj.get("label_cap") {
            None => DEFAULT_LABEL_CAP,
            Some(c) => c.as_u64().and_then(|c| u32::try_from(c).ok()).ok_or_else(|| GenTreeError::Parse("bad label_cap".into()))?,
        };
        let mut rule = match obj.get("children") {
            Some(Value::String(s)) => match s.as_str() {
                "builtin:av1423_4123" => {
                    if root != 2 {
                        return Err(GenTreeError::Parse("builtin:av1423_4123 has root 2".into()));
                    }
                    SuccessionRule::av1423_4123()
                }
                other => return Err(GenTreeError::Parse(format!("unknown builtin {other}"))),
            },
            Some(Value::Object(m)) => {
                let mut colors = vec![String::new()];
                let mut table = BTreeMap::new();
                for (k, list) in m {
                    let k: u32 = k.parse().map_err(|_| GenTreeError::Parse(format!("bad label {k}")))?;
                    let list = list.as_array().ok_or_else(|| GenTreeError::Parse(format!("children of {k} must be a list")))?;
                    let mut kids = Vec::with_capacity(list.len());
                    for e in list {
                        kids.push(parse_child(e, &mut colors)?);
                    }
                    table.insert(k, kids);
                }
                SuccessionRule::table(root, table, colors)
            }
            _ => return Err(GenTreeError::Parse("children must be a builtin name or an object".into())),
        };
        rule.label_cap = cap;
        Ok(rule)
    }

    pub fn parse_bytes(b: &[u8]) -> Result<Self, GenTreeError> {
        let s = std::str::from_utf8(b).map_err(|e| GenTreeError::Parse(e.to_string()))?;
        SuccessionRule::from_json(s)
    }

    /// `None` for template rules, which have no file form.
    pub fn to_json(&self) -> Option<String> {
        let children = match &self.children {
            Children::Builtin(b) => Value::String(format!("builtin:{}", b.name())),
            Children::Template(_) => return None,
            Children::Table(t) => {
                let mut m = Map::new();
                for (k, kids) in t {
                    let list = kids.iter().map(|c| json!([c.value, self.color_name(c.color)])).collect();
                    m.insert(k.to_string(), Value::Array(list));
                }
                Value::Object(m)
            }
        };
        let mut o = json!({"root": self.root, "children": children});
        if self.label_cap != DEFAULT_LABEL_CAP {
            o["label_cap"] = json!(self.label_cap);
        }
        Some(o.to_string())
    }
}

fn parse_child(e: &Value, colors: &mut Vec<String>) -> Result<ColoredLabel, GenTreeError> {
    let bad = || GenTreeError::Parse(format!("bad child {e}"));
    let (v, name) = match e {
        Value::Number(_) => (e, ""),
        Value::Array(a) if a.len() == 1 => (&a[0], ""),
        Value::Array(a) if a.len() == 2 => (&a[0], a[1].as_str().ok_or_else(bad)?),
        _ => return Err(bad()),
    };
    let value = v.as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(bad)?;
    let color = match colors.iter().position(|c| c == name) {
        Some(p) => p,
        None => {
            colors.push(name.to_string());
            colors.len() - 1
        }
    };
    let color = u8::try_from(color).map_err(|_| GenTreeError::Parse("too many colors".into()))?;
    Ok(ColoredLabel { value, color })
}

/// `(k_1^{c_1}, ..., k_n^{c_n})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelPath(pub Vec<ColoredLabel>);

impl LabelPath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[ColoredLabel] {
        &self.0
    }

    /// Root first and every step a child of the previous label.
    pub fn check(&self, rule: &SuccessionRule) -> Result<(), GenTreeError> {
        let first = self.0.first().ok_or_else(|| GenTreeError::Inconsistent("empty path".into()))?;
        if *first != ColoredLabel::plain(rule.root) {
            return Err(GenTreeError::Inconsistent(format!("path starts at {}", rule.format_label(*first))));
        }
        for (t, w) in self.0.windows(2).enumerate() {
            if !rule.children_of(w[0].value)?.contains(&w[1]) {
                return Err(GenTreeError::Inconsistent(format!(
                    "{} is not a child of {} at step {}",
                    rule.format_label(w[1]),
                    rule.format_label(w[0]),
                    t + 2
                )));
            }
        }
        Ok(())
    }

    /// Comma-separated labels such as `2, 3^T, 3`.
    pub fn parse(rule: &SuccessionRule, s: &str) -> Result<Self, GenTreeError> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim) {
            let (v, c) = tok.split_once('^').unwrap_or((tok, ""));
            let value = v.parse().map_err(|_| GenTreeError::Parse(format!("bad label {tok}")))?;
            let color = rule.color_tag(c).ok_or_else(|| GenTreeError::Parse(format!("unknown color {c}")))?;
            out.push(ColoredLabel { value, color });
        }
        Ok(LabelPath(out))
    }

    pub fn display<'a>(&'a self, rule: &'a SuccessionRule) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LabelPath, &'a SuccessionRule);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s: Vec<String> = self.0 .0.iter().map(|&c| self.1.format_label(c)).collect();
                write!(f, "{}", s.join(", "))
            }
        }
        D(self, rule)
    }
}

/// Every path with `n` labels, in lexicographic child order.
pub fn enumerate_paths(rule: &SuccessionRule, n: usize, cap: usize) -> Result<Vec<LabelPath>, GenTreeError> {
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut stack = vec![vec![ColoredLabel::plain(rule.root)]];
    while let Some(p) = stack.pop() {
        if p.len() == n {
            if out.len() == cap {
                return Err(GenTreeError::Inconsistent(format!("more than {cap} paths")));
            }
            out.push(LabelPath(p));
            continue;
        }
        let kids = rule.children_of(p.last().unwrap().value)?;
        for c in kids.into_iter().rev() {
            let mut q = p.clone();
            q.push(c);
            stack.push(q);
        }
    }
    Ok(out)
}
