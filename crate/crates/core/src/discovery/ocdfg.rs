//! Object-centric directly-follows graph: one DFG per object type.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eventlog::Ocel;

use super::Dfg;

/// Per-object-type DFG over the per-object event sequences of that type;
/// "cases" are the objects.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ocdfg {
    pub graphs: BTreeMap<String, Dfg>,
}

impl Ocdfg {
    /// Total edge frequency of one type's graph.
    pub fn type_total(&self, object_type: &str) -> u64 {
        self.graphs
            .get(object_type)
            .map(|g| g.total_edge_frequency())
            .unwrap_or(0)
    }
}

/// Projects each object to its time-ordered event sequence and computes a
/// DFG per object type. Objects without events are skipped.
pub fn compute_ocdfg(ocel: &Ocel) -> Result<Ocdfg> {
    if ocel.events.is_empty() {
        return Err(Error::EmptyOcel);
    }
    let mut ocdfg = Ocdfg::default();
    for object in &ocel.objects {
        let events = ocel.events_of_object(&object.id);
        if events.is_empty() {
            continue;
        }
        let dfg = ocdfg.graphs.entry(object.object_type.clone()).or_default();
        *dfg.start_activities
            .entry(events.first().unwrap().activity.clone())
            .or_insert(0) += 1;
        *dfg.end_activities
            .entry(events.last().unwrap().activity.clone())
            .or_insert(0) += 1;
        for pair in events.windows(2) {
            let key = (pair[0].activity.clone(), pair[1].activity.clone());
            *dfg.edges.entry(key).or_insert(0) += 1;
        }
    }
    Ok(ocdfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eventlog::parse_ocel_json;
    use crate::testutil::ocel1;

    #[test]
    fn ocel1_type_graphs_match_projection() {
        let g = compute_ocdfg(&ocel1()).unwrap();
        let order = &g.graphs["order"];
        assert_eq!(order.edges.len(), 2);
        assert_eq!(order.edges[&("place".into(), "pack".into())], 1);
        assert_eq!(order.edges[&("pack".into(), "ship".into())], 1);
        let item = &g.graphs["item"];
        assert_eq!(item.edges.len(), 1);
        assert_eq!(item.edges[&("place".into(), "pack".into())], 1);
        assert_eq!(g.type_total("order"), 2);
        assert_eq!(g.type_total("item"), 1);
    }

    #[test]
    fn single_event_objects_yield_empty_edge_sets() {
        let text = r#"{
          "events": [
            {"id": "e1", "type": "a", "time": "2024-01-01T00:00:00Z",
             "relationships": [{"objectId": "x"}]},
            {"id": "e2", "type": "b", "time": "2024-01-01T01:00:00Z",
             "relationships": [{"objectId": "y"}]}
          ],
          "objects": [{"id": "x", "type": "t"}, {"id": "y", "type": "t"}]
        }"#;
        let g = compute_ocdfg(&parse_ocel_json(text).unwrap()).unwrap();
        let t = &g.graphs["t"];
        assert!(t.edges.is_empty());
        assert_eq!(t.start_activities, t.end_activities);
        assert_eq!(t.start_activities.len(), 2);
    }

    #[test]
    fn single_object_events_flatten_to_plain_dfg() {
        // every event touches exactly one object of one type: the per-type
        // DFG must equal the DFG of the flattened log with objects as cases
        let text = r#"{
          "events": [
            {"id": "e1", "type": "a", "time": "2024-01-01T00:00:00Z",
             "relationships": [{"objectId": "x"}]},
            {"id": "e2", "type": "b", "time": "2024-01-01T01:00:00Z",
             "relationships": [{"objectId": "x"}]},
            {"id": "e3", "type": "a", "time": "2024-01-01T02:00:00Z",
             "relationships": [{"objectId": "y"}]},
            {"id": "e4", "type": "c", "time": "2024-01-01T03:00:00Z",
             "relationships": [{"objectId": "y"}]}
          ],
          "objects": [{"id": "x", "type": "t"}, {"id": "y", "type": "t"}]
        }"#;
        let ocel = parse_ocel_json(text).unwrap();
        let ocdfg = compute_ocdfg(&ocel).unwrap();

        let mut b = crate::eventlog::EventLogBuilder::new();
        for object in &ocel.objects {
            for event in ocel.events_of_object(&object.id) {
                b.event(&object.id, &event.activity, event.timestamp);
            }
        }
        let flattened = crate::discovery::compute_dfg(&b.build().unwrap());
        assert_eq!(ocdfg.graphs["t"], flattened);
    }

    #[test]
    fn empty_ocel_is_rejected() {
        assert!(matches!(
            compute_ocdfg(&Ocel::default()),
            Err(Error::EmptyOcel)
        ));
    }
}
