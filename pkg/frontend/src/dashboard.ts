import { ApiClient } from './api.js';
import { escapeHtml } from './render.js';
import type { ErrorTablePayload, PrecisionTablePayload, Round } from './types.js';

/**
 * Live tables. Every number shown is lifted verbatim from the service
 * payload; the dashboard never divides counts itself, so the server stays
 * the single source of truth for precision.
 */
export function renderPrecisionTable(payload: PrecisionTablePayload): string {
  const banner = payload.incomplete ? '<p class="banner">incomplete — unjudged fragments remain</p>' : '';
  const rows = payload.rows
    .map(
      (r) =>
        `<tr><td>${escapeHtml(r.pattern)}</td><td>${r.correct}</td>` +
        `<td>${r.error}</td><td>${escapeHtml(r.precision)}</td></tr>`,
    )
    .join('');
  const overall =
    `<tr class="overall"><td>Overall</td><td>${payload.overall.correct}</td>` +
    `<td>${payload.overall.error}</td><td>${escapeHtml(payload.overall.precision)}</td></tr>`;
  return (
    `${banner}<table class="metrics"><thead>` +
    '<tr><th>Pattern</th><th>Correct</th><th>Error</th><th>Precision</th></tr>' +
    `</thead><tbody>${rows}${overall}</tbody></table>`
  );
}

export function renderErrorTable(payload: ErrorTablePayload): string {
  const rows = payload.rows
    .map(
      (r) =>
        `<tr><td>${escapeHtml(r.violence_type)}</td><td>${r.count}</td>` +
        `<td>${escapeHtml(r.percentage)}%</td></tr>`,
    )
    .join('');
  const total = `<tr class="overall"><td>TOTAL</td><td>${payload.total}</td><td>100%</td></tr>`;
  return (
    '<table class="metrics"><thead><tr><th>Violence type</th><th>Count</th><th>%</th></tr></thead>' +
    `<tbody>${rows}${total}</tbody></table>`
  );
}

export class Dashboard {
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly sink: (section: 'r1' | 'r2' | 'errors', html: string) => void,
  ) {}

  async refresh(): Promise<void> {
    for (const round of ['r1', 'r2'] as Round[]) {
      const payload = await this.api.precisionTable(round);
      this.sink(round, renderPrecisionTable(payload));
    }
    const errors = await this.api.errorsTable();
    this.sink('errors', renderErrorTable(errors));
  }

  startPolling(intervalMs: number): void {
    this.stop();
    this.timer = setInterval(() => {
      void this.refresh().catch(() => undefined);
    }, intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
