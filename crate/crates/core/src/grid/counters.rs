use std::ops::AddAssign;

/// Tallies for one kind of collective on one process.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CollectiveCounters {
    /// Collective calls this process took part in, as root or receiver.
    pub calls: u64,
    pub messages_sent: u64,
    pub bytes_sent: u64,
    pub bytes_received: u64,
    pub max_single_payload: u64,
}

impl CollectiveCounters {
    pub(crate) fn record_send(&mut self, bytes: usize) {
        self.messages_sent += 1;
        self.bytes_sent += bytes as u64;
        self.max_single_payload = self.max_single_payload.max(bytes as u64);
    }

    pub(crate) fn record_recv(&mut self, bytes: usize) {
        self.bytes_received += bytes as u64;
        self.max_single_payload = self.max_single_payload.max(bytes as u64);
    }
}

impl AddAssign<&CollectiveCounters> for CollectiveCounters {
    fn add_assign(&mut self, o: &CollectiveCounters) {
        self.calls += o.calls;
        self.messages_sent += o.messages_sent;
        self.bytes_sent += o.bytes_sent;
        self.bytes_received += o.bytes_received;
        self.max_single_payload = self.max_single_payload.max(o.max_single_payload);
    }
}

/// Per-process communication counters. They only grow; `reset` is the only
/// way back to zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CommCounters {
    pub bcast: CollectiveCounters,
    pub alltoall: CollectiveCounters,
}

impl CommCounters {
    pub fn reset(&mut self) {
        *self = CommCounters::default();
    }

    /// Sums counters gathered from several processes (maxima stay maxima).
    pub fn total<'a>(all: impl IntoIterator<Item = &'a CommCounters>) -> CommCounters {
        let mut sum = CommCounters::default();
        for c in all {
            sum.bcast += &c.bcast;
            sum.alltoall += &c.alltoall;
        }
        sum
    }
}
