//! Report serialization: JSON with floats pinned to six decimals so repeated
//! runs are byte-identical, plus the per-node CSV writer.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::fisher::NodeInformation;
use crate::graph::{Graph, NodeSet};
use crate::metrics::PartitionReport;
use crate::potts::EstimationResult;

/// A float rendered with exactly six decimals, the one representation used in
/// every report this crate writes.
pub fn fixed6(value: f64) -> String {
    format!("{value:.6}")
}

/// Pretty JSON formatter that writes every float with six decimals.
pub struct Fixed6Formatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Fixed6Formatter<'_> {
    pub fn new() -> Self {
        Fixed6Formatter {
            inner: PrettyFormatter::new(),
        }
    }
}

impl Default for Fixed6Formatter<'_> {
    fn default() -> Self {
        Self::new()
    }
}

impl Formatter for Fixed6Formatter<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fixed6(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Serializes any value as pretty JSON with six-decimal floats. No trailing
/// newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed6Formatter::new());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvalidConfig(format!("serialization failed: {e}")))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Node and edge counts plus the label-state count, as reported in summaries.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GraphBlock {
    pub nodes: usize,
    pub edges: usize,
    pub q: u32,
}

/// The three metric blocks of a decomposition summary.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MetricsBlock {
    /// Full graph against its labels.
    pub original: PartitionReport,
    /// L subgraph against the labels it inherited.
    pub low: PartitionReport,
    /// H subgraph against the labels it inherited.
    pub high: PartitionReport,
}

/// The decomposition summary written by the pipeline. `C` is the resolved
/// configuration block of the front end that drove the run; field order here
/// is the order in the emitted JSON.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryReport<C: Serialize> {
    pub schema_version: u32,
    pub config: C,
    pub graph: GraphBlock,
    pub estimation: EstimationResult,
    pub threshold: f64,
    pub quantile: f64,
    pub degenerate: bool,
    pub low_count: usize,
    pub high_count: usize,
    pub metrics: MetricsBlock,
    pub low_nodes: Vec<String>,
    pub high_nodes: Vec<String>,
    pub warnings: Vec<String>,
}

/// Writes the per-node score table:
/// `node-id,degree,phi,psi,shape,shape_normalized,is_high`, floats at six
/// decimals, one row per node in id order.
pub fn write_node_csv(
    w: &mut impl Write,
    graph: &Graph,
    names: &[String],
    info: &[NodeInformation],
    high: &NodeSet,
) -> io::Result<()> {
    writeln!(w, "node-id,degree,phi,psi,shape,shape_normalized,is_high")?;
    for (i, (name, node)) in names.iter().zip(info).enumerate() {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            name,
            graph.degree(i).expect("in range"),
            fixed6(node.phi),
            fixed6(node.psi),
            fixed6(node.shape),
            fixed6(node.shape_normalized),
            high.contains(i as u32)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fisher::NodeInformation;

    #[test]
    fn floats_are_fixed_width() {
        assert_eq!(fixed6(0.5), "0.500000");
        assert_eq!(fixed6(-0.158374515084), "-0.158375");
        assert_eq!(fixed6(2.0), "2.000000");
        assert_eq!(fixed6(1e-9), "0.000000");
    }

    #[derive(Serialize)]
    struct Sample {
        name: &'static str,
        value: f64,
        items: Vec<f64>,
        flag: bool,
        count: u64,
    }

    #[test]
    fn json_applies_fixed_floats_everywhere() {
        let s = Sample {
            name: "x",
            value: 0.123456789,
            items: vec![1.0, 0.25],
            flag: true,
            count: 3,
        };
        let json = to_json_pretty(&s).unwrap();
        assert!(json.contains("\"value\": 0.123457"));
        assert!(json.contains("1.000000"));
        assert!(json.contains("0.250000"));
        // Integers and bools are untouched.
        assert!(json.contains("\"count\": 3"));
        assert!(json.contains("\"flag\": true"));
    }

    #[test]
    fn json_field_order_is_declaration_order() {
        let s = Sample {
            name: "x",
            value: 1.0,
            items: vec![],
            flag: false,
            count: 0,
        };
        let json = to_json_pretty(&s).unwrap();
        let positions: Vec<usize> = ["name", "value", "items", "flag", "count"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_serialization_is_deterministic() {
        let s = Sample {
            name: "x",
            value: 0.3,
            items: vec![0.1, 0.2],
            flag: true,
            count: 1,
        };
        assert_eq!(to_json_pretty(&s).unwrap(), to_json_pretty(&s).unwrap());
    }

    #[test]
    fn node_csv_shape() {
        let (g, _) = Graph::new(2, [(0, 1)].into_iter()).unwrap();
        let info = vec![
            NodeInformation {
                phi: 1.0,
                psi: 0.5,
                shape: -0.499750,
                shape_normalized: 0.0,
            },
            NodeInformation {
                phi: 0.25,
                psi: 0.5,
                shape: -1.992032,
                shape_normalized: 1.0,
            },
        ];
        let names = vec!["a".to_string(), "b".to_string()];
        let high = NodeSet::new([1]);
        let mut out = Vec::new();
        write_node_csv(&mut out, &g, &names, &info, &high).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "node-id,degree,phi,psi,shape,shape_normalized,is_high"
        );
        assert_eq!(lines[1], "a,1,1.000000,0.500000,-0.499750,0.000000,false");
        assert_eq!(lines[2], "b,1,0.250000,0.500000,-1.992032,1.000000,true");
    }
}
