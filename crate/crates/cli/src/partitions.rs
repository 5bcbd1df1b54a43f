//! Partition syntax for command-line arguments: plain decreasing lists
//! ("6,2") and exponent form ("2^2,1^4"). Output always uses explicit
//! decreasing lists; exponent notation exists only at this parsing layer.

use sympdec_core::Partition;

pub fn parse_partition(s: &str) -> Result<Partition, String> {
    let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
    if trimmed.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts: Vec<u32> = Vec::new();
    for chunk in trimmed.split(',') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(format!("empty component in partition '{s}'"));
        }
        let (base, count) = match chunk.split_once('^') {
            Some((b, e)) => {
                let base: u32 = b
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad part '{b}' in '{s}'"))?;
                let count: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad exponent '{e}' in '{s}'"))?;
                (base, count)
            }
            None => {
                let base: u32 = chunk
                    .parse()
                    .map_err(|_| format!("bad part '{chunk}' in '{s}'"))?;
                (base, 1)
            }
        };
        if base == 0 {
            return Err(format!("zero part in partition '{s}'"));
        }
        for _ in 0..count {
            parts.push(base);
        }
    }
    Ok(Partition::from_unsorted(parts))
}

pub fn partition_to_json(p: &Partition) -> serde_json::Value {
    serde_json::Value::Array(
        p.parts()
            .iter()
            .map(|&x| serde_json::Value::Number(x.into()))
            .collect(),
    )
}
