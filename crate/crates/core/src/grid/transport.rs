use std::sync::mpsc::{sync_channel, Receiver, RecvTimeoutError, SyncSender};
use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommError {
    #[error("rank {rank} timed out waiting for a message from rank {from}")]
    Timeout { rank: usize, from: usize },
    #[error("rank {rank} lost its channel to rank {peer}")]
    Disconnected { rank: usize, peer: usize },
    #[error("malformed payload: {0}")]
    Decode(String),
    #[error("collective misuse: {0}")]
    Participation(String),
}

/// Ordered point-to-point byte transport seen from one process.
///
/// Messages between a fixed (sender, receiver) pair are delivered in the
/// order they were sent. Collectives are built on these two calls only, so
/// an MPI-backed implementation can replace the in-process one.
pub trait Transport: Send {
    fn rank(&self) -> usize;
    fn size(&self) -> usize;
    fn send(&mut self, to: usize, bytes: Vec<u8>) -> Result<(), CommError>;
    fn recv(&mut self, from: usize) -> Result<Vec<u8>, CommError>;
}

/// One process's end of the in-process transport: a bounded channel per
/// ordered pair of ranks.
pub struct InProcessEndpoint {
    rank: usize,
    senders: Vec<Option<SyncSender<Vec<u8>>>>,
    receivers: Vec<Option<Receiver<Vec<u8>>>>,
    timeout: Duration,
}

pub const DEFAULT_CHANNEL_CAPACITY: usize = 64;
pub const DEFAULT_RECV_TIMEOUT: Duration = Duration::from_secs(120);

/// Builds `p` connected endpoints. A receive that waits longer than
/// `timeout` fails, which turns a mismatched collective into an error
/// instead of a hang.
pub fn in_process_transport(p: usize, capacity: usize, timeout: Duration) -> Vec<InProcessEndpoint> {
    let mut senders: Vec<Vec<Option<SyncSender<Vec<u8>>>>> = (0..p).map(|_| (0..p).map(|_| None).collect()).collect();
    let mut receivers: Vec<Vec<Option<Receiver<Vec<u8>>>>> = (0..p).map(|_| (0..p).map(|_| None).collect()).collect();
    for from in 0..p {
        for to in 0..p {
            if from != to {
                let (tx, rx) = sync_channel(capacity.max(1));
                senders[from][to] = Some(tx);
                receivers[to][from] = Some(rx);
            }
        }
    }
    senders
        .into_iter()
        .zip(receivers)
        .enumerate()
        .map(|(rank, (senders, receivers))| InProcessEndpoint {
            rank,
            senders,
            receivers,
            timeout,
        })
        .collect()
}

impl Transport for InProcessEndpoint {
    fn rank(&self) -> usize {
        self.rank
    }

    fn size(&self) -> usize {
        self.senders.len()
    }

    fn send(&mut self, to: usize, bytes: Vec<u8>) -> Result<(), CommError> {
        let rank = self.rank;
        let tx = self
            .senders
            .get(to)
            .and_then(Option::as_ref)
            .ok_or(CommError::Participation(format!("rank {rank} cannot send to {to}")))?;
        tx.send(bytes).map_err(|_| CommError::Disconnected { rank, peer: to })
    }

    fn recv(&mut self, from: usize) -> Result<Vec<u8>, CommError> {
        let rank = self.rank;
        let rx = self
            .receivers
            .get(from)
            .and_then(Option::as_ref)
            .ok_or(CommError::Participation(format!(
                "rank {rank} cannot receive from {from}"
            )))?;
        rx.recv_timeout(self.timeout).map_err(|e| match e {
            RecvTimeoutError::Timeout => CommError::Timeout { rank, from },
            RecvTimeoutError::Disconnected => CommError::Disconnected { rank, peer: from },
        })
    }
}
