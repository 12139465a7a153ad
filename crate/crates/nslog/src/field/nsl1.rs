//! NSL1 snapshot format.
//!
//! Layout, all little-endian:
//! bytes 0..4  magic "NSL1"
//! u32         version (1)
//! u8          rank
//! u8          ncomp
//! rank x u64  points per axis
//! rank x f64  box length per axis
//! then f64 samples, component-major, row-major (last axis fastest).

use std::io::{Read, Write};

use super::data::PhysField;
use super::grid::Grid;
use super::FieldError;

pub const NSL1_MAGIC: [u8; 4] = *b"NSL1";
pub const NSL1_VERSION: u32 = 1;

pub fn write_nsl1<W: Write>(f: &PhysField, w: &mut W) -> Result<(), FieldError> {
    let grid = f.grid();
    let rank = grid.rank();
    w.write_all(&NSL1_MAGIC)?;
    w.write_all(&NSL1_VERSION.to_le_bytes())?;
    w.write_all(&[rank as u8, f.ncomp() as u8])?;
    for a in 0..rank {
        w.write_all(&(grid.dims()[a] as u64).to_le_bytes())?;
    }
    for a in 0..rank {
        w.write_all(&grid.box_len()[a].to_le_bytes())?;
    }
    for &v in f.data() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_nsl1<R: Read>(r: &mut R) -> Result<PhysField, FieldError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != NSL1_MAGIC {
        return Err(FieldError::Format(format!(
            "bad magic {magic:?}, expected {NSL1_MAGIC:?}"
        )));
    }
    let mut v4 = [0u8; 4];
    r.read_exact(&mut v4)?;
    let version = u32::from_le_bytes(v4);
    if version != NSL1_VERSION {
        return Err(FieldError::Format(format!(
            "unsupported version {version}, expected {NSL1_VERSION}"
        )));
    }
    let mut hdr = [0u8; 2];
    r.read_exact(&mut hdr)?;
    let (rank, ncomp) = (hdr[0] as usize, hdr[1] as usize);
    if !(2..=3).contains(&rank) {
        return Err(FieldError::Format(format!("bad rank {rank}")));
    }
    if ncomp == 0 || ncomp > 16 {
        return Err(FieldError::Format(format!("bad component count {ncomp}")));
    }
    let mut npts = Vec::with_capacity(rank);
    for _ in 0..rank {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        npts.push(u64::from_le_bytes(b) as usize);
    }
    let mut box_len = Vec::with_capacity(rank);
    for _ in 0..rank {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        box_len.push(f64::from_le_bytes(b));
    }
    let grid = Grid::new(rank, &npts, &box_len)?;
    let count = ncomp * grid.total_points();
    let mut data = Vec::with_capacity(count);
    let mut b = [0u8; 8];
    for _ in 0..count {
        r.read_exact(&mut b)?;
        data.push(f64::from_le_bytes(b));
    }
    PhysField::from_data(grid, ncomp, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let g = Grid::new(3, &[8, 16, 8], &[1.0, 2.0, 3.0]).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, y, z| (x * 1.7 + y - z).sin() + c as f64 / 3.0);
        let mut buf = Vec::new();
        write_nsl1(&f, &mut buf).unwrap();
        let g2 = read_nsl1(&mut buf.as_slice()).unwrap();
        assert_eq!(f, g2);
        // write again and compare bytes
        let mut buf2 = Vec::new();
        write_nsl1(&g2, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn rejects_bad_magic_and_version() {
        let g = Grid::square(8).unwrap();
        let f = PhysField::zeros(g, 2);
        let mut buf = Vec::new();
        write_nsl1(&f, &mut buf).unwrap();

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(
            read_nsl1(&mut bad.as_slice()),
            Err(FieldError::Format(_))
        ));

        let mut bad = buf.clone();
        bad[4] = 9;
        assert!(matches!(
            read_nsl1(&mut bad.as_slice()),
            Err(FieldError::Format(_))
        ));
    }

    #[test]
    fn truncated_payload_is_an_io_error() {
        let g = Grid::square(8).unwrap();
        let f = PhysField::zeros(g, 1);
        let mut buf = Vec::new();
        write_nsl1(&f, &mut buf).unwrap();
        buf.truncate(buf.len() - 5);
        assert!(matches!(
            read_nsl1(&mut buf.as_slice()),
            Err(FieldError::Io(_))
        ));
    }
}
