//! The yes/no embedding oracle and the request log an attacker produces.

use std::fmt;

use crate::embed::{is_embeddable_with, EmbedConfig};
use crate::error::{Result, VnxError};
use crate::graph::{CapGraph, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    MotifSearch,
    Repetition,
    EdgeExpansion,
    Termination,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::MotifSearch, Phase::Repetition, Phase::EdgeExpansion, Phase::Termination];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::MotifSearch => "motif_search",
            Self::Repetition => "repetition",
            Self::EdgeExpansion => "edge_expansion",
            Self::Termination => "termination",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub phase: Phase,
    pub guest_nodes: usize,
    pub guest_edges: usize,
    pub reply: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RequestLog {
    pub requests: Vec<Request>,
}

impl RequestLog {
    pub fn len(&self) -> usize {
        self.requests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requests.is_empty()
    }

    pub fn count(&self, phase: Phase) -> usize {
        self.requests.iter().filter(|r| r.phase == phase).count()
    }

    pub fn replies(&self) -> Vec<bool> {
        self.requests.iter().map(|r| r.reply).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("idx,phase,guest_nodes,guest_edges,reply\n");
        for (i, r) in self.requests.iter().enumerate() {
            out.push_str(&format!(
                "{i},{},{},{},{}\n",
                r.phase,
                r.guest_nodes,
                r.guest_edges,
                if r.reply { "yes" } else { "no" }
            ));
        }
        out
    }
}

/// Anything that answers embedding requests. Attack code only ever sees the
/// boolean reply.
pub trait Oracle {
    fn query(&mut self, guest: &CapGraph, phase: Phase) -> Result<bool>;
    fn log(&self) -> &RequestLog;
}

/// Answers truthfully against a fixed host.
#[derive(Debug, Clone)]
pub struct HonestOracle {
    host: CapGraph,
    config: EmbedConfig,
    log: RequestLog,
}

impl HonestOracle {
    pub fn new(host: CapGraph, epsilon: Weight) -> Result<Self> {
        Self::with_config(host, EmbedConfig::with_epsilon(epsilon))
    }

    pub fn with_config(host: CapGraph, config: EmbedConfig) -> Result<Self> {
        host.validate_host()?;
        Ok(Self { host, config, log: RequestLog::default() })
    }

    pub fn host(&self) -> &CapGraph {
        &self.host
    }

    pub fn config(&self) -> &EmbedConfig {
        &self.config
    }
}

impl Oracle for HonestOracle {
    fn query(&mut self, guest: &CapGraph, phase: Phase) -> Result<bool> {
        let reply = is_embeddable_with(guest, &self.host, &self.config)?;
        self.log.requests.push(Request { phase, guest_nodes: guest.node_count(), guest_edges: guest.edge_count(), reply });
        Ok(reply)
    }

    fn log(&self) -> &RequestLog {
        &self.log
    }
}

/// Replays a fixed reply sequence and never looks at the host.
#[derive(Debug, Clone, Default)]
pub struct ReplayOracle {
    replies: Vec<bool>,
    log: RequestLog,
}

impl ReplayOracle {
    pub fn new(replies: Vec<bool>) -> Self {
        Self { replies, log: RequestLog::default() }
    }
}

impl Oracle for ReplayOracle {
    fn query(&mut self, guest: &CapGraph, phase: Phase) -> Result<bool> {
        let i = self.log.len();
        let reply = *self
            .replies
            .get(i)
            .ok_or_else(|| VnxError::InvalidGraph(format!("replay exhausted after {i} requests")))?;
        self.log.requests.push(Request { phase, guest_nodes: guest.node_count(), guest_edges: guest.edge_count(), reply });
        Ok(reply)
    }

    fn log(&self) -> &RequestLog {
        &self.log
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::default_epsilon;
    use crate::generate::{clique, path};

    #[test]
    fn honest_logs_every_request() {
        let mut o = HonestOracle::new(clique(3), default_epsilon()).unwrap();
        assert!(o.query(&CapGraph::chain(), Phase::MotifSearch).unwrap());
        assert!(!o.query(&clique(4), Phase::MotifSearch).unwrap());
        assert_eq!(o.log().len(), 2);
        assert_eq!(o.log().replies(), vec![true, false]);
        assert!(o.log().to_csv().ends_with("1,motif_search,4,6,no\n"));
    }

    #[test]
    fn rejects_disconnected_host() {
        assert!(HonestOracle::new(CapGraph::new(2), default_epsilon()).is_err());
    }

    #[test]
    fn replay_runs_out() {
        let mut o = ReplayOracle::new(vec![true]);
        assert!(o.query(&path(2), Phase::Repetition).unwrap());
        assert!(o.query(&path(2), Phase::Repetition).is_err());
    }
}
