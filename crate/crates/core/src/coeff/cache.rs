//! Binary table cache.
//!
//! Layout (little-endian): `b"SCS1"`, version `u16`, label length `u32` and
//! UTF-8 bytes, `N: u64`, flags `u8` (bit 0 exact, bit 1 normalized),
//! exponent numerator and denominator as `i64`, then the exact entries
//! (sign `i8`, limb count `u32`, `u64` limbs) and the normalized entries
//! (`f64` bit patterns), and finally an FNV-1a 64 checksum of everything
//! before it.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::{BigInt, Sign};

use super::table::{CoefficientTable, Exponent};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"SCS1";
pub const VERSION: u16 = 1;

const FLAG_EXACT: u8 = 1;
const FLAG_NORMALIZED: u8 = 2;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn encode(table: &CoefficientTable) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    let label = table.label().as_bytes();
    buf.extend_from_slice(&(label.len() as u32).to_le_bytes());
    buf.extend_from_slice(label);
    buf.extend_from_slice(&(table.limit() as u64).to_le_bytes());
    let mut flags = 0u8;
    if table.has_exact() {
        flags |= FLAG_EXACT;
    }
    if table.has_normalized() {
        flags |= FLAG_NORMALIZED;
    }
    buf.push(flags);
    buf.extend_from_slice(&table.exponent().num.to_le_bytes());
    buf.extend_from_slice(&table.exponent().den.to_le_bytes());
    if let Some(exact) = table.exact_raw() {
        for v in &exact[1..] {
            let (sign, limbs) = v.to_u64_digits();
            let s: i8 = match sign {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            };
            buf.push(s as u8);
            buf.extend_from_slice(&(limbs.len() as u32).to_le_bytes());
            for l in limbs {
                buf.extend_from_slice(&l.to_le_bytes());
            }
        }
    }
    if let Some(norm) = table.normalized_raw() {
        for v in &norm[1..] {
            buf.extend_from_slice(&v.to_bits().to_le_bytes());
        }
    }
    let sum = fnv1a64(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    buf
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Internal("cache payload ends early".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> Result<CoefficientTable> {
    if bytes.len() < 6 || &bytes[..4] != MAGIC {
        return Err(Error::Version("not a coefficient cache file (bad magic)".into()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(Error::Version(format!("cache format version {version}, expected {VERSION}")));
    }
    if bytes.len() < 14 {
        return Err(Error::Checksum { stored: 0, computed: fnv1a64(bytes) });
    }
    let (payload, tail) = bytes.split_at(bytes.len() - 8);
    let stored = u64::from_le_bytes(tail.try_into().unwrap());
    let computed = fnv1a64(payload);
    if stored != computed {
        return Err(Error::Checksum { stored, computed });
    }
    let mut r = Reader { bytes: payload, pos: 6 };
    let label_len = r.u32()? as usize;
    let label = String::from_utf8(r.take(label_len)?.to_vec())
        .map_err(|_| Error::Internal("cache label is not UTF-8".into()))?;
    let limit = r.u64()? as usize;
    let flags = r.u8()?;
    let exponent = Exponent {
        num: r.i64()?,
        den: r.i64()?,
    };
    let exact = if flags & FLAG_EXACT != 0 {
        let mut v = Vec::with_capacity(limit + 1);
        v.push(BigInt::from(0));
        for _ in 0..limit {
            let sign = match r.u8()? as i8 {
                -1 => Sign::Minus,
                0 => Sign::NoSign,
                1 => Sign::Plus,
                s => return Err(Error::Internal(format!("bad sign byte {s} in cache"))),
            };
            let n = r.u32()? as usize;
            let limbs: Vec<u32> = (0..n)
                .map(|_| r.u64())
                .collect::<Result<Vec<u64>>>()?
                .into_iter()
                .flat_map(|l| [l as u32, (l >> 32) as u32])
                .collect();
            v.push(BigInt::from_slice(sign, &limbs));
        }
        Some(v)
    } else {
        None
    };
    let normalized = if flags & FLAG_NORMALIZED != 0 {
        let mut v = Vec::with_capacity(limit + 1);
        v.push(0.0);
        for _ in 0..limit {
            v.push(f64::from_bits(r.u64()?));
        }
        Some(v)
    } else {
        None
    };
    if r.pos != payload.len() {
        return Err(Error::Internal("trailing bytes in cache payload".into()));
    }
    Ok(CoefficientTable::from_parts(label, limit, exact, normalized, exponent))
}

/// Writes the table atomically (temporary file, then rename).
pub fn cache_store(table: &CoefficientTable, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(table))?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn cache_load(path: &Path) -> Result<CoefficientTable> {
    decode(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::build_tau_table;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn round_trip_tau() {
        let t = build_tau_table(1000).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tau.scs");
        cache_store(&t, &path).unwrap();
        let back = cache_load(&path).unwrap();
        assert_eq!(back, t);
        for n in 1..=1000 {
            assert_eq!(back.value(n).to_bits(), t.value(n).to_bits());
        }
    }

    #[test]
    fn truncated_file_fails_checksum() {
        let bytes = encode(&build_tau_table(50).unwrap());
        let cut = &bytes[..bytes.len() - 11];
        assert!(matches!(decode(cut), Err(Error::Checksum { .. })));
    }

    #[test]
    fn wrong_magic_and_version() {
        let mut bytes = encode(&build_tau_table(5).unwrap());
        bytes[4] = 9;
        assert!(matches!(decode(&bytes), Err(Error::Version(_))));
        bytes[0] = b'X';
        assert!(matches!(decode(&bytes), Err(Error::Version(_))));
    }

    #[test]
    fn normalized_only_round_trip() {
        let t = CoefficientTable::from_normalized("w", vec![0.5, -0.0, f64::MIN_POSITIVE], Exponent::new(1, 3).unwrap());
        let back = decode(&encode(&t)).unwrap();
        assert_eq!(back.exponent(), t.exponent());
        assert_eq!(back.value(2).to_bits(), (-0.0f64).to_bits());
    }
}
