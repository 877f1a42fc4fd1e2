use std::thread;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::grid::transport::{
    in_process_transport, CommError, Transport, DEFAULT_CHANNEL_CAPACITY, DEFAULT_RECV_TIMEOUT,
};
use crate::grid::wire::Payload;
use crate::grid::{CommCounters, GridShape};

/// The three communicators each process belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommKind {
    /// P(i, :, k): members indexed by j.
    Row,
    /// P(:, j, k): members indexed by i.
    Column,
    /// P(i, j, :): members indexed by k.
    Fiber,
}

/// One process of the virtual grid: its coordinates, its transport endpoint
/// and its private counters.
pub struct ProcessCtx {
    shape: GridShape,
    coords: (usize, usize, usize),
    transport: Box<dyn Transport>,
    counters: CommCounters,
}

/// Wires one context per rank over the given transports (one per rank,
/// in rank order).
pub fn grid_create(shape: GridShape, transports: Vec<Box<dyn Transport>>) -> Result<Vec<ProcessCtx>> {
    if transports.len() != shape.size() {
        return Err(Error::config(format!(
            "grid {shape} needs {} transport endpoints, got {}",
            shape.size(),
            transports.len()
        )));
    }
    transports
        .into_iter()
        .enumerate()
        .map(|(rank, transport)| {
            if transport.rank() != rank || transport.size() != shape.size() {
                return Err(Error::config(format!(
                    "endpoint {rank} reports rank {} of {}",
                    transport.rank(),
                    transport.size()
                )));
            }
            Ok(ProcessCtx {
                shape,
                coords: shape.coords(rank),
                transport,
                counters: CommCounters::default(),
            })
        })
        .collect()
}

/// Contexts connected by the in-process transport.
pub fn in_process_grid(shape: GridShape) -> Vec<ProcessCtx> {
    in_process_grid_with(shape, DEFAULT_CHANNEL_CAPACITY, DEFAULT_RECV_TIMEOUT)
}

pub fn in_process_grid_with(shape: GridShape, capacity: usize, timeout: Duration) -> Vec<ProcessCtx> {
    let transports = in_process_transport(shape.size(), capacity, timeout)
        .into_iter()
        .map(|e| Box::new(e) as Box<dyn Transport>)
        .collect();
    grid_create(shape, transports).expect("endpoints match the shape")
}

/// Runs `body` once per context, each on its own thread, handing rank `r`
/// the r-th input. Returns per-rank results and final counters, or the
/// lowest-rank error.
pub fn run_grid<I, R, F>(ctxs: Vec<ProcessCtx>, inputs: Vec<I>, body: F) -> Result<Vec<(R, CommCounters)>>
where
    I: Send,
    R: Send,
    F: Fn(&mut ProcessCtx, I) -> Result<R> + Sync,
{
    if ctxs.len() != inputs.len() {
        return Err(Error::config(format!(
            "{} processes but {} inputs",
            ctxs.len(),
            inputs.len()
        )));
    }
    let body = &body;
    let outcomes: Vec<Result<(R, CommCounters)>> = thread::scope(|scope| {
        let handles: Vec<_> = ctxs
            .into_iter()
            .zip(inputs)
            .map(|(mut ctx, input)| {
                scope.spawn(move || {
                    let r = body(&mut ctx, input)?;
                    Ok((r, ctx.counters))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("grid process panicked"))
            .collect()
    });
    // A failing rank tears down its channels, so its peers usually fail with
    // `Disconnected`; report the root cause rather than the fallout.
    let mut first_err: Option<Error> = None;
    let mut results = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            Ok(v) => results.push(v),
            Err(e) => {
                let fallout = matches!(e, Error::Comm(CommError::Disconnected { .. }));
                match &first_err {
                    None => first_err = Some(e),
                    Some(Error::Comm(CommError::Disconnected { .. })) if !fallout => first_err = Some(e),
                    _ => {}
                }
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(results),
    }
}

impl ProcessCtx {
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    /// (i, j, k).
    pub fn coords(&self) -> (usize, usize, usize) {
        self.coords
    }

    pub fn rank(&self) -> usize {
        self.transport.rank()
    }

    pub fn counters(&self) -> &CommCounters {
        &self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters.reset();
    }

    pub fn comm_size(&self, kind: CommKind) -> usize {
        match kind {
            CommKind::Row => self.shape.pc,
            CommKind::Column => self.shape.pr,
            CommKind::Fiber => self.shape.pl,
        }
    }

    /// This process's index within the communicator.
    pub fn comm_index(&self, kind: CommKind) -> usize {
        let (i, j, k) = self.coords;
        match kind {
            CommKind::Row => j,
            CommKind::Column => i,
            CommKind::Fiber => k,
        }
    }

    /// Global rank of member `m` of the communicator.
    pub fn member_rank(&self, kind: CommKind, m: usize) -> usize {
        let (i, j, k) = self.coords;
        match kind {
            CommKind::Row => self.shape.rank(i, m, k),
            CommKind::Column => self.shape.rank(m, j, k),
            CommKind::Fiber => self.shape.rank(i, j, m),
        }
    }

    /// Flat broadcast: the root sends one copy of its encoded payload to
    /// every other member. The root passes `Some(payload)`, everyone else
    /// `None`; all members get the root's value back.
    pub fn bcast<P: Payload>(&mut self, kind: CommKind, root: usize, payload: Option<P>) -> Result<P> {
        let size = self.comm_size(kind);
        if root >= size {
            return Err(CommError::Participation(format!("root {root} outside communicator of {size}")).into());
        }
        let me = self.comm_index(kind);
        self.counters.bcast.calls += 1;
        if me == root {
            let payload = payload
                .ok_or_else(|| CommError::Participation(format!("broadcast root {root} supplied no payload")))?;
            if size > 1 {
                let bytes = payload.encode();
                for m in (0..size).filter(|&m| m != me) {
                    let to = self.member_rank(kind, m);
                    self.transport.send(to, bytes.clone())?;
                    self.counters.bcast.record_send(bytes.len());
                }
            }
            Ok(payload)
        } else {
            let from = self.member_rank(kind, root);
            let bytes = self.transport.recv(from)?;
            self.counters.bcast.record_recv(bytes.len());
            Ok(P::decode(&bytes)?)
        }
    }

    /// Personalized all-to-all: `outgoing[q]` goes to member q; the result's
    /// entry r is what member r addressed to this process. The self part is
    /// moved locally and not counted.
    pub fn alltoall<P: Payload>(&mut self, kind: CommKind, outgoing: Vec<P>) -> Result<Vec<P>> {
        let size = self.comm_size(kind);
        if outgoing.len() != size {
            return Err(CommError::Participation(format!(
                "all-to-all over {size} members given {} payloads",
                outgoing.len()
            ))
            .into());
        }
        let me = self.comm_index(kind);
        self.counters.alltoall.calls += 1;
        let mut own = None;
        for (q, payload) in outgoing.into_iter().enumerate() {
            if q == me {
                own = Some(payload);
                continue;
            }
            let bytes = payload.encode();
            let n = bytes.len();
            self.transport.send(self.member_rank(kind, q), bytes)?;
            self.counters.alltoall.record_send(n);
        }
        let mut incoming = Vec::with_capacity(size);
        for r in 0..size {
            if r == me {
                incoming.push(own.take().expect("own payload present"));
            } else {
                let bytes = self.transport.recv(self.member_rank(kind, r))?;
                self.counters.alltoall.record_recv(bytes.len());
                incoming.push(P::decode(&bytes)?);
            }
        }
        Ok(incoming)
    }
}
