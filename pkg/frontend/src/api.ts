import type {
  ErrorTablePayload,
  FragmentView,
  Judgment,
  PrecisionTablePayload,
  Round,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the review service; the token authenticates one annotator. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly token: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      ...init,
      headers: {
        'Content-Type': 'application/json',
        'X-Auth-Token': this.token,
        ...(init?.headers ?? {}),
      },
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  fetchBatch(annotator: string, round: Round): Promise<FragmentView[]> {
    return this.request(`/api/batches/${encodeURIComponent(annotator)}?round=${round}`);
  }

  /** Resolves to true when the judgment was newly stored, false on an identical no-op repost. */
  async submitJudgment(judgment: Judgment): Promise<boolean> {
    const response = await this.fetchFn(`${this.baseUrl}/api/judgments`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json', 'X-Auth-Token': this.token },
      body: JSON.stringify(judgment),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // ignore
      }
      throw new ApiError(response.status, detail);
    }
    return response.status === 201;
  }

  precisionTable(round: Round): Promise<PrecisionTablePayload> {
    return this.request(`/api/tables/precision?round=${round}`);
  }

  errorsTable(): Promise<ErrorTablePayload> {
    return this.request('/api/tables/errors');
  }
}
