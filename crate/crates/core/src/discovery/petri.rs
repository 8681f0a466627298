//! Petri net model and PNML ingestion.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use quick_xml::events::Event as XmlEvent;
use quick_xml::Reader;

use crate::error::{Error, Result};

/// Place/transition net with initial and final markings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PetriNet {
    pub places: BTreeSet<String>,
    /// Transition id to label; `None` marks a silent transition.
    pub transitions: BTreeMap<String, Option<String>>,
    /// Arcs connect a place with a transition (either direction).
    pub arcs: BTreeSet<(String, String)>,
    pub initial_marking: BTreeMap<String, u64>,
    pub final_marking: BTreeMap<String, u64>,
}

impl PetriNet {
    /// Label shown for a transition endpoint: its label, or `tau[id]` when
    /// silent.
    pub fn transition_display(&self, id: &str) -> String {
        match self.transitions.get(id) {
            Some(Some(label)) => label.clone(),
            _ => format!("tau[{id}]"),
        }
    }
}

/// Imports a PNML file: places, transitions, arcs, optional
/// `initialMarking` per place, and an optional `finalmarkings` section.
/// Transitions without a name element become silent.
pub fn import_pnml(path: impl AsRef<Path>) -> Result<PetriNet> {
    let text = fs::read_to_string(path.as_ref())?;
    parse_pnml(&text)
}

/// Parses PNML from a string; see [`import_pnml`].
pub fn parse_pnml(text: &str) -> Result<PetriNet> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    #[derive(PartialEq)]
    enum Ctx {
        None,
        Place,
        Transition,
        InitialMarking,
        Name,
        FinalPlace,
    }

    let mut net = PetriNet::default();
    let mut arcs: Vec<(String, String)> = Vec::new();
    let mut ctx = Ctx::None;
    let mut current_id = String::new();
    let mut in_finalmarkings = false;
    let mut final_place = String::new();
    let mut text_buf = String::new();

    loop {
        let pos = reader.buffer_position();
        match reader.read_event() {
            Err(e) => return Err(Error::XmlParse(format!("{e} at byte {pos}"))),
            Ok(XmlEvent::Eof) => break,
            Ok(XmlEvent::Start(e)) | Ok(XmlEvent::Empty(e)) => {
                match e.name().as_ref() {
                    b"place" if !in_finalmarkings => {
                        current_id = required_attr(&e, "id")?;
                        net.places.insert(current_id.clone());
                        ctx = Ctx::Place;
                    }
                    b"place" => {
                        final_place = required_attr(&e, "idref")?;
                        text_buf.clear();
                        ctx = Ctx::FinalPlace;
                    }
                    b"transition" => {
                        current_id = required_attr(&e, "id")?;
                        net.transitions.insert(current_id.clone(), None);
                        ctx = Ctx::Transition;
                    }
                    b"arc" => {
                        arcs.push((required_attr(&e, "source")?, required_attr(&e, "target")?));
                    }
                    b"initialMarking" if ctx == Ctx::Place => {
                        text_buf.clear();
                        ctx = Ctx::InitialMarking;
                    }
                    b"name" if ctx == Ctx::Transition => {
                        text_buf.clear();
                        ctx = Ctx::Name;
                    }
                    b"finalmarkings" => in_finalmarkings = true,
                    _ => {}
                }
            }
            Ok(XmlEvent::Text(t)) => {
                if matches!(ctx, Ctx::InitialMarking | Ctx::Name | Ctx::FinalPlace) {
                    text_buf.push_str(
                        &t.decode().map_err(|e| Error::XmlParse(e.to_string()))?,
                    );
                }
            }
            Ok(XmlEvent::End(e)) => match e.name().as_ref() {
                b"initialMarking" => {
                    let tokens: u64 = text_buf.trim().parse().map_err(|_| {
                        Error::XmlParse(format!("invalid marking `{}`", text_buf.trim()))
                    })?;
                    if tokens > 0 {
                        net.initial_marking.insert(current_id.clone(), tokens);
                    }
                    ctx = Ctx::Place;
                }
                b"name" if ctx == Ctx::Name => {
                    let label = text_buf.trim();
                    if !label.is_empty() {
                        net.transitions
                            .insert(current_id.clone(), Some(label.to_string()));
                    }
                    ctx = Ctx::Transition;
                }
                b"place" if ctx == Ctx::FinalPlace => {
                    let tokens: u64 = text_buf.trim().parse().unwrap_or(1);
                    if tokens > 0 {
                        *net.final_marking.entry(final_place.clone()).or_insert(0) = tokens;
                    }
                    ctx = Ctx::None;
                }
                b"place" | b"transition" => ctx = Ctx::None,
                b"finalmarkings" => in_finalmarkings = false,
                _ => {}
            },
            Ok(_) => {}
        }
    }

    for (source, target) in arcs {
        let src_place = net.places.contains(&source);
        let tgt_place = net.places.contains(&target);
        let src_trans = net.transitions.contains_key(&source);
        let tgt_trans = net.transitions.contains_key(&target);
        let bipartite = (src_place && tgt_trans) || (src_trans && tgt_place);
        if !bipartite {
            return Err(Error::NonBipartiteArc(source, target));
        }
        net.arcs.insert((source, target));
    }

    for place in net.initial_marking.keys().chain(net.final_marking.keys()) {
        if !net.places.contains(place) {
            return Err(Error::XmlParse(format!(
                "marking references unknown place `{place}`"
            )));
        }
    }

    Ok(net)
}

fn required_attr(e: &quick_xml::events::BytesStart<'_>, name: &str) -> Result<String> {
    match e.try_get_attribute(name) {
        Ok(Some(a)) => a
            .normalized_value(quick_xml::XmlVersion::Implicit1_0)
            .map(|v| v.into_owned())
            .map_err(|err| Error::XmlParse(err.to_string())),
        Ok(None) => Err(Error::XmlParse(format!(
            "<{}> lacks attribute `{name}`",
            String::from_utf8_lossy(e.name().as_ref())
        ))),
        Err(err) => Err(Error::XmlParse(err.to_string())),
    }
}
