//! JSON documents for networks, faults, problems, trees and graphs.
//!
//! Every document carries `"version": 1` and rejects unknown fields.
//! Serialization is deterministic: nodes and edges ascending, faults by
//! ascending edge id.

use serde::{Deserialize, Serialize};

use crate::constructions::SimpleGraph;
use crate::error::{Error, Result};
use crate::network::{Assignment, Edge, Fault, FaultType, Literal, NodeId, SwitchingNetwork};
use crate::treediag::{DecisionTree, DiagnosisProblem};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub version: u32,
    pub nodes: Vec<NodeId>,
    pub poles: [NodeId; 2],
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: usize,
    pub u: NodeId,
    pub v: NodeId,
    pub var: u32,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeConstant {
    pub edge: usize,
    pub value: u8,
}

/// A fault without its own version tag, as embedded in larger documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaultRecord {
    pub assignments: Vec<EdgeConstant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaultDocument {
    pub version: u32,
    pub assignments: Vec<EdgeConstant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaultSetDocument {
    pub version: u32,
    pub fault_type: String,
    pub faults: Vec<FaultRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub version: u32,
    pub network: NetworkDocument,
    pub fault_type: String,
    pub faults: Vec<FaultRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    pub version: u32,
    /// Length of every query string.
    pub arity: usize,
    /// Leaf faults, referenced by index.
    pub faults: Vec<FaultRecord>,
    pub root: TreeNodeRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TreeNodeRecord {
    Query {
        /// Bit string, first canonical variable leftmost.
        input: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        zero: Option<Box<TreeNodeRecord>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        one: Option<Box<TreeNodeRecord>>,
    },
    Leaf {
        fault: usize,
    },
}

/// Vertex-cover graph input: vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn check_version(version: u32) -> Result<()> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Structure(format!(
            "unsupported document version {version} (expected {FORMAT_VERSION})"
        )))
    }
}

impl From<&SwitchingNetwork> for NetworkDocument {
    fn from(net: &SwitchingNetwork) -> Self {
        let (a, b) = net.poles();
        NetworkDocument {
            version: FORMAT_VERSION,
            nodes: net.nodes().to_vec(),
            poles: [a, b],
            edges: net
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id,
                    u: e.u,
                    v: e.v,
                    var: e.label.var,
                    negated: e.label.negated,
                })
                .collect(),
        }
    }
}

impl TryFrom<NetworkDocument> for SwitchingNetwork {
    type Error = Error;

    fn try_from(doc: NetworkDocument) -> Result<Self> {
        check_version(doc.version)?;
        let edges = doc
            .edges
            .into_iter()
            .map(|r| Edge {
                id: r.id,
                u: r.u,
                v: r.v,
                label: Literal {
                    var: r.var,
                    negated: r.negated,
                },
            })
            .collect();
        SwitchingNetwork::new(doc.nodes, (doc.poles[0], doc.poles[1]), edges)
    }
}

impl From<&Fault> for FaultRecord {
    fn from(fault: &Fault) -> Self {
        FaultRecord {
            assignments: fault
                .iter()
                .map(|(edge, v)| EdgeConstant { edge, value: v as u8 })
                .collect(),
        }
    }
}

fn fault_from_constants(assignments: &[EdgeConstant]) -> Result<Fault> {
    let mut fault = Fault::empty();
    for c in assignments {
        let value = match c.value {
            0 => false,
            1 => true,
            v => return Err(Error::Range(format!("edge {} assigned {v}; constants are 0 or 1", c.edge))),
        };
        if fault.get(c.edge).is_some() {
            return Err(Error::Structure(format!("edge {} assigned twice", c.edge)));
        }
        fault.set(c.edge, value);
    }
    Ok(fault)
}

impl TryFrom<&FaultRecord> for Fault {
    type Error = Error;

    fn try_from(r: &FaultRecord) -> Result<Self> {
        fault_from_constants(&r.assignments)
    }
}

pub fn parse_network(text: &str) -> Result<SwitchingNetwork> {
    from_json::<NetworkDocument>(text)?.try_into()
}

pub fn serialize_network(net: &SwitchingNetwork) -> String {
    to_json(&NetworkDocument::from(net))
}

/// Parses a fault; it is not checked against any network here.
pub fn parse_fault(text: &str) -> Result<Fault> {
    let doc: FaultDocument = from_json(text)?;
    check_version(doc.version)?;
    fault_from_constants(&doc.assignments)
}

pub fn serialize_fault(fault: &Fault) -> String {
    to_json(&FaultDocument {
        version: FORMAT_VERSION,
        assignments: FaultRecord::from(fault).assignments,
    })
}

pub fn serialize_fault_set(fault_type: FaultType, faults: &[Fault]) -> String {
    to_json(&FaultSetDocument {
        version: FORMAT_VERSION,
        fault_type: fault_type.as_str().to_owned(),
        faults: faults.iter().map(FaultRecord::from).collect(),
    })
}

pub fn parse_fault_set(text: &str) -> Result<(FaultType, Vec<Fault>)> {
    let doc: FaultSetDocument = from_json(text)?;
    check_version(doc.version)?;
    let faults = doc.faults.iter().map(Fault::try_from).collect::<Result<_>>()?;
    Ok((doc.fault_type.parse()?, faults))
}

pub fn parse_problem(text: &str) -> Result<DiagnosisProblem> {
    let doc: ProblemDocument = from_json(text)?;
    check_version(doc.version)?;
    let network = doc.network.try_into()?;
    let faults = doc.faults.iter().map(Fault::try_from).collect::<Result<_>>()?;
    DiagnosisProblem::new(network, doc.fault_type.parse()?, faults)
}

pub fn serialize_problem(problem: &DiagnosisProblem) -> String {
    to_json(&ProblemDocument {
        version: FORMAT_VERSION,
        network: problem.network().into(),
        fault_type: problem.fault_type().as_str().to_owned(),
        faults: problem.faults().iter().map(FaultRecord::from).collect(),
    })
}

/// Leaf faults are deduplicated into a table in preorder (0-branch first).
pub fn serialize_tree(tree: &DecisionTree, arity: usize) -> String {
    fn walk(node: &DecisionTree, faults: &mut Vec<Fault>) -> TreeNodeRecord {
        match node {
            DecisionTree::Leaf(f) => {
                let idx = faults.iter().position(|g| g == f).unwrap_or_else(|| {
                    faults.push(f.clone());
                    faults.len() - 1
                });
                TreeNodeRecord::Leaf { fault: idx }
            }
            DecisionTree::Query { input, zero, one } => TreeNodeRecord::Query {
                input: input.to_string(),
                zero: Some(Box::new(walk(zero, faults))),
                one: Some(Box::new(walk(one, faults))),
            },
        }
    }
    let mut faults = Vec::new();
    let root = walk(tree, &mut faults);
    to_json(&TreeDocument {
        version: FORMAT_VERSION,
        arity,
        faults: faults.iter().map(FaultRecord::from).collect(),
        root,
    })
}

/// Returns the tree and its declared arity. Missing children, dangling fault
/// references and queries of the wrong length are structure errors.
pub fn parse_tree(text: &str) -> Result<(DecisionTree, usize)> {
    let doc: TreeDocument = from_json(text)?;
    check_version(doc.version)?;
    let faults: Vec<Fault> = doc.faults.iter().map(Fault::try_from).collect::<Result<_>>()?;
    fn build(node: &TreeNodeRecord, faults: &[Fault], arity: usize, path: &str) -> Result<DecisionTree> {
        match node {
            TreeNodeRecord::Leaf { fault } => faults
                .get(*fault)
                .cloned()
                .map(DecisionTree::Leaf)
                .ok_or_else(|| Error::Structure(format!("leaf at {path} references missing fault {fault}"))),
            TreeNodeRecord::Query { input, zero, one } => {
                let a: Assignment = input.parse()?;
                if a.len() != arity {
                    return Err(Error::Structure(format!(
                        "query at {path} has {} bits, tree arity is {arity}",
                        a.len()
                    )));
                }
                let child = |c: &Option<Box<TreeNodeRecord>>, tag: &str| -> Result<DecisionTree> {
                    let c = c
                        .as_deref()
                        .ok_or_else(|| Error::Structure(format!("query at {path} lacks its {tag}-child")))?;
                    build(c, faults, arity, &format!("{path}{tag}"))
                };
                Ok(DecisionTree::query(a, child(zero, "0")?, child(one, "1")?))
            }
        }
    }
    let tree = build(&doc.root, &faults, doc.arity, "root/")?;
    Ok((tree, doc.arity))
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let doc: GraphDocument = from_json(text)?;
    SimpleGraph::new(doc.n, doc.edges.into_iter().map(|[i, j]| (i, j)).collect())
}

pub fn serialize_graph(graph: &SimpleGraph) -> String {
    to_json(&GraphDocument {
        n: graph.vertex_count(),
        edges: graph.edges().iter().map(|&(i, j)| [i, j]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::s1_network;
    use crate::network::FaultType;
    use crate::treediag::build_tree_greedy;

    const ONE_EDGE: &str = r#"{
  "version": 1,
  "nodes": [0, 1],
  "poles": [0, 1],
  "edges": [{"id": 0, "u": 0, "v": 1, "var": 0, "negated": false}]
}"#;

    #[test]
    fn network_round_trip() {
        let net = s1_network(2).unwrap();
        let text = serialize_network(&net);
        assert_eq!(parse_network(&text).unwrap(), net);
        assert_eq!(serialize_network(&parse_network(&text).unwrap()), text);
    }

    #[test]
    fn hand_written_network_evaluates_as_x0() {
        let net = parse_network(ONE_EDGE).unwrap();
        let t = crate::boolfn::truth_table(&net, &Fault::empty()).unwrap();
        assert_eq!(t.to_bit_string(), "01");
    }

    #[test]
    fn unknown_field_is_positioned() {
        let text = ONE_EDGE.replace("\"poles\"", "\"colour\": 3,\n  \"poles\"");
        match parse_network(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!(line, 4);
                assert!(column > 0);
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn semantic_violation_is_reported() {
        let text = ONE_EDGE.replace("\"poles\": [0, 1]", "\"poles\": [0, 0]");
        assert!(matches!(parse_network(&text), Err(Error::InvalidNetwork(_))));
        let text = ONE_EDGE.replace("\"version\": 1", "\"version\": 9");
        assert!(matches!(parse_network(&text), Err(Error::Structure(_))));
    }

    #[test]
    fn tree_round_trip_and_structure_errors() {
        let net = s1_network(2).unwrap();
        let problem = DiagnosisProblem::new(
            net,
            FaultType::Zero,
            vec![Fault::empty(), Fault::constant_on([0, 1], false)],
        )
        .unwrap();
        let tree = build_tree_greedy(&problem).unwrap();
        let text = serialize_tree(&tree, 2);
        assert_eq!(parse_tree(&text).unwrap(), (tree, 2));

        let missing = r#"{"version":1,"arity":1,"faults":[{"assignments":[]}],
            "root":{"kind":"query","input":"1","zero":{"kind":"leaf","fault":0}}}"#;
        assert!(matches!(parse_tree(missing), Err(Error::Structure(_))));
        let dangling = r#"{"version":1,"arity":1,"faults":[],"root":{"kind":"leaf","fault":0}}"#;
        assert!(matches!(parse_tree(dangling), Err(Error::Structure(_))));
        let wrong_len = r#"{"version":1,"arity":2,"faults":[{"assignments":[]}],
            "root":{"kind":"query","input":"1","zero":{"kind":"leaf","fault":0},"one":{"kind":"leaf","fault":0}}}"#;
        assert!(matches!(parse_tree(wrong_len), Err(Error::Structure(_))));
    }

    #[test]
    fn problem_and_graph_round_trip() {
        let problem = DiagnosisProblem::new(
            s1_network(1).unwrap(),
            FaultType::Both,
            vec![Fault::empty(), Fault::constant_on([1], true)],
        )
        .unwrap();
        assert_eq!(parse_problem(&serialize_problem(&problem)).unwrap(), problem);

        let g = parse_graph(r#"{"n": 3, "edges": [[1,2],[2,3]]}"#).unwrap();
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        assert!(parse_graph(r#"{"n": 2, "edges": [[1,3]]}"#).is_err());
    }

    #[test]
    fn fault_documents() {
        let f = Fault::constant_on([2, 0], true);
        assert_eq!(parse_fault(&serialize_fault(&f)).unwrap(), f);
        assert!(matches!(
            parse_fault(r#"{"version":1,"assignments":[{"edge":0,"value":2}]}"#),
            Err(Error::Range(_))
        ));
        let faults = vec![Fault::empty(), f];
        let (t, back) = parse_fault_set(&serialize_fault_set(FaultType::One, &faults)).unwrap();
        assert_eq!((t, back), (FaultType::One, faults));
    }
}
