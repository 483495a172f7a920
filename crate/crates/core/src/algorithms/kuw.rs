//! Block-wise parallel basis search.
//!
//! The active set is split into `ceil(sqrt(n))` contiguous blocks `Z_i`. The
//! partial basis `X` grows by absorbing a whole block whenever `X ∪ Z_i` is
//! independent; otherwise every block drops the first element that closes a
//! dependent prefix. Throughout, `X ∪ ⋃ Z_i` spans the active set.

use crate::error::{MatroidError, Result};
use crate::ground::ElementSet;
use crate::oracle::Oracle;

/// How augment and prune steps are laid out over rounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KuwSchedule {
    /// Augment and prefix queries share one round; elements already spanned
    /// by `X` are dropped as soon as they are seen. At most `2 ceil(sqrt(n))`
    /// rounds.
    #[default]
    Speculative,
    /// An augment round, and only if no block fits, a separate prune round.
    Sequential,
}

/// State at the head of one loop iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopHead {
    pub partial: ElementSet,
    pub blocks: Vec<ElementSet>,
}

/// Contiguous blocks of the active set in index order, sizes differing by at
/// most one.
pub fn kuw_blocks(active: ElementSet) -> Vec<ElementSet> {
    let items = active.to_vec();
    let n = items.len();
    if n == 0 {
        return Vec::new();
    }
    let k = (1..=n).find(|k| k * k >= n).unwrap_or(n);
    let (base, extra) = (n / k, n % k);
    let mut out = Vec::with_capacity(k);
    let mut pos = 0;
    for i in 0..k {
        let size = base + usize::from(i < extra);
        out.push(items[pos..pos + size].iter().copied().collect());
        pos += size;
    }
    out
}

/// A basis of `o.active()` with the default blocks and schedule.
pub fn kuw_basis_search(o: &dyn Oracle) -> Result<ElementSet> {
    kuw_with(o, kuw_blocks(o.active()), KuwSchedule::default(), None)
}

/// Runs the search over explicit `blocks`, which must partition `o.active()`.
///
/// With `trace`, the state at every loop head is appended to it.
pub fn kuw_with(
    o: &dyn Oracle,
    mut blocks: Vec<ElementSet>,
    schedule: KuwSchedule,
    mut trace: Option<&mut Vec<LoopHead>>,
) -> Result<ElementSet> {
    let union = blocks.iter().fold(ElementSet::EMPTY, |a, &b| a | b);
    let sizes: usize = blocks.iter().map(|b| b.len()).sum();
    if union != o.active() || sizes != union.len() {
        return Err(MatroidError::Domain(
            "blocks must partition the active set".into(),
        ));
    }
    let mut x = ElementSet::EMPTY;
    loop {
        if let Some(t) = trace.as_deref_mut() {
            t.push(LoopHead {
                partial: x,
                blocks: blocks.clone(),
            });
        }
        let live: Vec<usize> = (0..blocks.len()).filter(|&i| !blocks[i].is_empty()).collect();
        if live.is_empty() {
            return Ok(x);
        }
        match schedule {
            KuwSchedule::Speculative => speculative_round(o, &mut x, &mut blocks, &live)?,
            KuwSchedule::Sequential => sequential_step(o, &mut x, &mut blocks, &live)?,
        }
    }
}

/// Sets `X ∪ {z_1..z_j}` for `j` in `1..len` of the block in index order.
fn proper_prefixes(x: ElementSet, block: ElementSet) -> Vec<ElementSet> {
    let items = block.to_vec();
    let mut acc = x;
    let mut out = Vec::with_capacity(items.len().saturating_sub(1));
    for &z in &items[..items.len().saturating_sub(1)] {
        acc.insert(z);
        out.push(acc);
    }
    out
}

/// Element closing the first dependent prefix, given answers for the proper
/// prefixes. The full block is known to be dependent.
fn first_dependent(block: ElementSet, prefix_answers: &[bool]) -> usize {
    let items = block.to_vec();
    let j = prefix_answers.iter().position(|ok| !ok).unwrap_or(items.len() - 1);
    items[j]
}

fn speculative_round(o: &dyn Oracle, x: &mut ElementSet, blocks: &mut [ElementSet], live: &[usize]) -> Result<()> {
    let mut batch = Vec::new();
    let mut spans = Vec::with_capacity(live.len());
    for &i in live {
        let start = batch.len();
        batch.push(*x | blocks[i]);
        batch.extend(proper_prefixes(*x, blocks[i]));
        batch.extend(blocks[i].iter().skip(1).map(|z| x.with(z)));
        spans.push(start);
    }
    let answers = o.submit_round(&batch)?;
    if let Some(k) = spans.iter().position(|&s| answers[s]) {
        let i = live[k];
        *x = *x | blocks[i];
        blocks[i] = ElementSet::EMPTY;
        return Ok(());
    }
    for (k, &i) in live.iter().enumerate() {
        let block = blocks[i];
        let m = block.len();
        let start = spans[k];
        let prefixes = &answers[start + 1..start + m];
        let singles = &answers[start + m..start + 2 * m - 1];
        let mut drop = ElementSet::singleton(first_dependent(block, prefixes));
        // The first element's singleton test is its length-one prefix.
        let items = block.to_vec();
        if m > 1 && !prefixes[0] {
            drop.insert(items[0]);
        }
        for (z, &ok) in items.iter().skip(1).zip(singles) {
            if !ok {
                drop.insert(*z);
            }
        }
        blocks[i] = block - drop;
    }
    Ok(())
}

fn sequential_step(o: &dyn Oracle, x: &mut ElementSet, blocks: &mut [ElementSet], live: &[usize]) -> Result<()> {
    let batch: Vec<ElementSet> = live.iter().map(|&i| *x | blocks[i]).collect();
    let answers = o.submit_round(&batch)?;
    if let Some(k) = answers.iter().position(|&ok| ok) {
        let i = live[k];
        *x = *x | blocks[i];
        blocks[i] = ElementSet::EMPTY;
        return Ok(());
    }
    let mut batch = Vec::new();
    let mut spans = Vec::with_capacity(live.len());
    for &i in live {
        let p = proper_prefixes(*x, blocks[i]);
        spans.push((batch.len(), p.len()));
        batch.extend(p);
    }
    // Singleton blocks already have their only prefix answered.
    let answers = if batch.is_empty() { Vec::new() } else { o.submit_round(&batch)? };
    for (&i, &(start, len)) in live.iter().zip(&spans) {
        let z = first_dependent(blocks[i], &answers[start..start + len]);
        blocks[i].remove(z);
    }
    Ok(())
}
