//! Model files: parsing, validation, canonical form and digest.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::AlgebraModel;
use crate::desirability::{closure, lift_event, SetKind, SetRep};
use crate::error::{Error, Result};
use crate::partition::{Partition, QuestionLattice};
use crate::rational::parse_rational;
use crate::space::{make_space, Event, Gamble, Space};

/// On-disk model description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub omega: Vec<String>,
    #[serde(default)]
    pub partitions: BTreeMap<String, Vec<usize>>,
    /// Partition names; all named partitions when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub questions: Option<Vec<String>>,
    /// Adds the all-singletons partition to the questions.
    #[serde(default, skip_serializing_if = "is_false")]
    pub require_top: bool,
    #[serde(default)]
    pub sets: BTreeMap<String, SetDescriptor>,
    #[serde(default)]
    pub events: BTreeMap<String, Vec<String>>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetDescriptor {
    Top,
    Unit,
    Assertions {
        gambles: Vec<GambleText>,
    },
    Event {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        event: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        worlds: Option<Vec<String>>,
    },
    LexAtom {
        order: Vec<String>,
    },
}

/// A gamble written either as `"1,-1/2,0"` or as a list of values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GambleText {
    Csv(String),
    Values(Vec<ScalarText>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl GambleText {
    fn to_gamble(&self, space: &Space) -> Result<Gamble> {
        match self {
            GambleText::Csv(csv) => Gamble::parse(space, csv),
            GambleText::Values(values) => {
                let values = values
                    .iter()
                    .map(|v| match v {
                        ScalarText::Int(i) => Ok(crate::rational::int(*i)),
                        ScalarText::Text(t) => parse_rational(t),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Gamble::new(space, values)
            }
        }
    }
}

/// A validated model together with its named events and digest.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub file: ModelFile,
    pub model: AlgebraModel,
    pub events: BTreeMap<String, Event>,
    pub digest: String,
}

impl LoadedModel {
    pub fn space(&self) -> &Space {
        self.model.space()
    }

    pub fn event(&self, name: &str) -> Result<&Event> {
        self.events.get(name).ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    /// Joins added while closing the question list.
    pub fn closure_additions(&self) -> &[String] {
        self.model.lattice().closure_additions()
    }

    /// Pretty JSON of the canonical model file.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.file).expect("model files serialize");
        text.push('\n');
        text
    }
}

pub fn load_model(path: &Path) -> Result<LoadedModel> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_model(&text)
}

pub fn parse_model(text: &str) -> Result<LoadedModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    build(file)
}

fn worlds_event(space: &Space, names: &[String], path: &str) -> Result<Event> {
    Event::from_names(space, names).map_err(|e| Error::validation(path, e.to_string()))
}

fn build(file: ModelFile) -> Result<LoadedModel> {
    let space = make_space(&file.omega).map_err(|e| Error::validation("omega", e.to_string()))?;
    let n = space.len();

    let mut partitions = BTreeMap::new();
    for (name, blocks) in &file.partitions {
        let path = format!("partitions.{name}");
        if blocks.len() != n {
            return Err(Error::validation(path, format!("expected {n} block ids, found {}", blocks.len())));
        }
        let p = Partition::from_labels(blocks).map_err(|e| Error::validation(path, e.to_string()))?;
        partitions.insert(name.clone(), p);
    }
    let lattice = match &file.questions {
        Some(names) => {
            let mut named = Vec::new();
            for (i, name) in names.iter().enumerate() {
                let p = partitions
                    .get(name)
                    .ok_or_else(|| Error::validation(format!("questions[{i}]"), format!("unknown partition `{name}`")))?;
                named.push((name.clone(), p.clone()));
            }
            QuestionLattice::new(&space, named, file.require_top)?
        }
        None if partitions.is_empty() => QuestionLattice::full(&space),
        None => QuestionLattice::new(&space, partitions.clone().into_iter().collect(), file.require_top)?,
    };

    let mut events = BTreeMap::new();
    for (name, worlds) in &file.events {
        events.insert(name.clone(), worlds_event(&space, worlds, &format!("events.{name}"))?);
    }

    let mut sets = Vec::new();
    for (name, desc) in &file.sets {
        let path = format!("sets.{name}");
        let d = match desc {
            SetDescriptor::Top => SetRep::top(&space),
            SetDescriptor::Unit => SetRep::unit(&space),
            SetDescriptor::Assertions { gambles } => {
                let mut k = Vec::new();
                for (i, g) in gambles.iter().enumerate() {
                    let g = g
                        .to_gamble(&space)
                        .map_err(|e| Error::validation(format!("{path}.gambles[{i}]"), e.to_string()))?;
                    k.push(g);
                }
                closure(&space, &k)?
            }
            SetDescriptor::Event { event, worlds } => {
                let e = match (event, worlds) {
                    (Some(ev), None) => events
                        .get(ev)
                        .cloned()
                        .ok_or_else(|| Error::validation(format!("{path}.event"), format!("unknown event `{ev}`")))?,
                    (None, Some(ws)) => worlds_event(&space, ws, &format!("{path}.worlds"))?,
                    _ => return Err(Error::validation(path, "give exactly one of `event` or `worlds`")),
                };
                lift_event(&e)
            }
            SetDescriptor::LexAtom { order } => {
                let idx = order
                    .iter()
                    .map(|w| space.index_of(w))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::validation(format!("{path}.order"), e.to_string()))?;
                SetRep::lex_atom(&space, idx).map_err(|e| Error::validation(format!("{path}.order"), e.to_string()))?
            }
        };
        sets.push((name.clone(), d));
    }
    let model = AlgebraModel::new(lattice, sets)?;
    let file = canonical(file, &space, &partitions)?;
    let digest = digest(&file);
    Ok(LoadedModel {
        file,
        model,
        events,
        digest,
    })
}

fn sorted_worlds(space: &Space, names: &[String]) -> Result<Vec<String>> {
    Ok(Event::from_names(space, names)?.names())
}

fn canonical(mut file: ModelFile, space: &Space, partitions: &BTreeMap<String, Partition>) -> Result<ModelFile> {
    for (name, blocks) in file.partitions.iter_mut() {
        *blocks = partitions[name].block_ids().to_vec();
    }
    for worlds in file.events.values_mut() {
        *worlds = sorted_worlds(space, worlds)?;
    }
    for desc in file.sets.values_mut() {
        match desc {
            SetDescriptor::Assertions { gambles } => {
                for g in gambles.iter_mut() {
                    *g = GambleText::Csv(g.to_gamble(space)?.to_csv());
                }
            }
            SetDescriptor::Event { worlds: Some(ws), .. } => *ws = sorted_worlds(space, ws)?,
            _ => {}
        }
    }
    Ok(file)
}

fn digest(file: &ModelFile) -> String {
    let bytes = serde_json::to_vec(file).expect("model files serialize");
    hex::encode(Sha256::digest(&bytes))
}

/// JSON descriptor of a set representation.
pub fn set_to_json(d: &SetRep) -> Value {
    let space = d.space();
    let names = |ws: &[usize]| ws.iter().map(|&w| space.name(w).to_string()).collect::<Vec<_>>();
    match d.kind() {
        SetKind::Top => json!({"kind": "top"}),
        SetKind::Unit => json!({"kind": "unit"}),
        SetKind::Assertions(k) => {
            json!({"kind": "assertions", "gambles": k.iter().map(Gamble::to_csv).collect::<Vec<_>>()})
        }
        SetKind::EventSet(s) => json!({"kind": "event", "worlds": s.names()}),
        SetKind::LexAtom(order) => json!({"kind": "lex-atom", "order": names(order)}),
        SetKind::SymbolicExtract { inner, question } => json!({
            "kind": "extract",
            "inner": set_to_json(inner),
            "question": question.blocks().iter().map(|b| names(b)).collect::<Vec<_>>(),
        }),
    }
}
