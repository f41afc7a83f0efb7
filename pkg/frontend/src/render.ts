import type { FragmentView, Highlight } from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/**
 * Render the fragment text with layered highlight spans.
 *
 * Arbitrary overlaps are supported by slicing the text at every span
 * boundary and stacking one CSS class per active layer on each slice, so a
 * filler span nested inside a frame-element span gets both classes.
 */
export function renderFragmentText(text: string, highlights: Highlight[]): string {
  const boundaries = new Set<number>([0, text.length]);
  for (const h of highlights) {
    boundaries.add(Math.max(0, h.start));
    boundaries.add(Math.min(text.length, h.end));
  }
  const cuts = [...boundaries].sort((a, b) => a - b);

  const parts: string[] = [];
  for (let i = 0; i + 1 < cuts.length; i++) {
    const [from, to] = [cuts[i], cuts[i + 1]];
    if (from >= to) continue;
    const slice = escapeHtml(text.slice(from, to));
    const active = highlights.filter((h) => h.start <= from && to <= h.end);
    if (active.length === 0) {
      parts.push(slice);
      continue;
    }
    const classes = [...new Set(active.map((h) => `hl-${h.layer}`))].sort().join(' ');
    const labels = active.map((h) => `${h.layer}:${h.label}`).join(' | ');
    parts.push(`<span class="${classes}" title="${escapeHtml(labels)}">${slice}</span>`);
  }
  return parts.join('');
}

export function renderLegend(view: FragmentView): string {
  const badges = view.highlights
    .map((h) => `<span class="badge badge-${h.layer}">${escapeHtml(h.label)}</span>`)
    .join(' ');
  const description = view.pattern_description
    ? `<p class="pattern-description">${escapeHtml(view.pattern_description)}</p>`
    : '';
  return (
    `<div class="legend"><h3>${escapeHtml(view.pattern_name)}</h3>` +
    `${description}<div class="badges">${badges}</div></div>`
  );
}

/** Full fragment card: pinned pattern legend plus the highlighted sentence. */
export function renderFragment(view: FragmentView): string {
  return (
    `<article class="fragment" data-match-id="${escapeHtml(view.match_id)}">` +
    renderLegend(view) +
    `<p class="fragment-text">${renderFragmentText(view.text, view.highlights)}</p>` +
    `</article>`
  );
}
