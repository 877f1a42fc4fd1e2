//! Byte encoding of matrices sent through the transport.
//!
//! Layout, little-endian: a 24-byte header (nrows, ncols, nnz as u64)
//! followed by 24 bytes per nonzero (row, col, value bits). The encoded
//! length is therefore exactly `24 + 24 · nnz`.

use crate::grid::CommError;
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::WireScalar;

pub const HEADER_BYTES: usize = 24;
pub const TRIPLE_BYTES: usize = 24;

/// Encoded size of a matrix with `nnz` nonzeros.
pub fn encoded_len(nnz: usize) -> usize {
    HEADER_BYTES + TRIPLE_BYTES * nnz
}

/// Something a collective can carry.
pub trait Payload: Sized {
    fn encode(&self) -> Vec<u8>;
    fn decode(bytes: &[u8]) -> Result<Self, CommError>;
}

fn encode_triples<'a, T: WireScalar>(
    nrows: usize,
    ncols: usize,
    nnz: usize,
    triples: impl Iterator<Item = Triple<T>> + 'a,
) -> Vec<u8> {
    let mut out = Vec::with_capacity(encoded_len(nnz));
    for h in [nrows, ncols, nnz] {
        out.extend_from_slice(&(h as u64).to_le_bytes());
    }
    for t in triples {
        out.extend_from_slice(&(t.row as u64).to_le_bytes());
        out.extend_from_slice(&(t.col as u64).to_le_bytes());
        out.extend_from_slice(&t.value.to_wire().to_le_bytes());
    }
    debug_assert_eq!(out.len(), encoded_len(nnz));
    out
}

fn decode_triples<T: WireScalar>(bytes: &[u8]) -> Result<(usize, usize, Vec<Triple<T>>), CommError> {
    let word = |i: usize| u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().unwrap());
    if bytes.len() < HEADER_BYTES {
        return Err(CommError::Decode(format!(
            "{} bytes is shorter than the header",
            bytes.len()
        )));
    }
    let (nrows, ncols, nnz) = (word(0) as usize, word(1) as usize, word(2) as usize);
    if bytes.len() != encoded_len(nnz) {
        return Err(CommError::Decode(format!(
            "header announces {nnz} triples but {} bytes follow",
            bytes.len() - HEADER_BYTES
        )));
    }
    let triples = (0..nnz)
        .map(|e| {
            let base = 3 + 3 * e;
            Triple::new(
                word(base) as usize,
                word(base + 1) as usize,
                T::from_wire(word(base + 2)),
            )
        })
        .collect();
    Ok((nrows, ncols, triples))
}

impl<T: WireScalar> Payload for TripleList<T> {
    fn encode(&self) -> Vec<u8> {
        encode_triples(self.nrows(), self.ncols(), self.nnz(), self.iter().copied())
    }

    fn decode(bytes: &[u8]) -> Result<Self, CommError> {
        let (nrows, ncols, triples) = decode_triples(bytes)?;
        TripleList::from_sorted(nrows, ncols, triples).map_err(|e| CommError::Decode(e.to_string()))
    }
}

impl<T: WireScalar> Payload for DcscMatrix<T> {
    fn encode(&self) -> Vec<u8> {
        let triples = (0..self.nzc()).flat_map(move |k| {
            let (j, rows, vals) = self.column_at(k);
            rows.iter().zip(vals).map(move |(&r, &v)| Triple::new(r, j, v))
        });
        encode_triples(self.nrows(), self.ncols(), self.nnz(), triples)
    }

    fn decode(bytes: &[u8]) -> Result<Self, CommError> {
        let list = TripleList::<T>::decode(bytes)?;
        DcscMatrix::from_triples(&list).map_err(|e| CommError::Decode(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_exact() {
        let t = TripleList::new(5, 5, vec![Triple::new(1, 2, 3.5), Triple::new(4, 4, -1.0)]).unwrap();
        assert_eq!(t.encode().len(), 24 + 48);
        assert_eq!(TripleList::<f64>::empty(3, 3).encode().len(), HEADER_BYTES);
        let d = DcscMatrix::from_triples(&t).unwrap();
        assert_eq!(d.encode(), t.encode());
        assert_eq!(DcscMatrix::<f64>::decode(&d.encode()).unwrap(), d);
        assert_eq!(TripleList::<f64>::decode(&t.encode()).unwrap(), t);
    }

    #[test]
    fn truncated_payload_rejected() {
        let t = TripleList::new(5, 5, vec![Triple::new(1, 2, 3i64)]).unwrap();
        let bytes = t.encode();
        assert!(TripleList::<i64>::decode(&bytes[..bytes.len() - 1]).is_err());
        assert!(TripleList::<i64>::decode(&bytes[..10]).is_err());
    }
}
