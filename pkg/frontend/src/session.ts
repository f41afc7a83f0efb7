import { ApiClient } from './api.js';
import type { FragmentView, Judgment, Round, Verdict } from './types.js';

/**
 * One annotator's judging queue for one round.
 *
 * The server is authoritative: loading fetches only still-unjudged
 * fragments, submission advances the cursor optimistically and rolls back
 * when the server rejects the judgment.
 */
export class UiSession {
  queue: FragmentView[] = [];
  cursor = 0;
  submitted = 0;
  lastError: string | null = null;

  constructor(
    private readonly api: ApiClient,
    readonly annotator: string,
    readonly round: Round,
  ) {}

  async load(): Promise<void> {
    this.queue = await this.api.fetchBatch(this.annotator, this.round);
    this.cursor = 0;
    this.lastError = null;
  }

  get pending(): number {
    return this.queue.length - this.cursor;
  }

  current(): FragmentView | null {
    return this.cursor < this.queue.length ? this.queue[this.cursor] : null;
  }

  done(): boolean {
    return this.cursor >= this.queue.length;
  }

  /**
   * Submit a verdict for the current fragment. The cursor advances before
   * the server answers; a rejection restores it and surfaces the error.
   */
  async submit(verdict: Verdict, violenceType?: string): Promise<boolean> {
    const fragment = this.current();
    if (fragment === null) {
      return false;
    }
    const judgment: Judgment = {
      match_id: fragment.match_id,
      annotator_id: this.annotator,
      round: this.round,
      verdict,
      ...(violenceType ? { violence_type: violenceType } : {}),
    };
    const before = this.cursor;
    this.cursor += 1; // optimistic advance
    try {
      await this.api.submitJudgment(judgment);
      this.submitted += 1;
      this.lastError = null;
      return true;
    } catch (error) {
      this.cursor = before; // rollback
      this.lastError = error instanceof Error ? error.message : String(error);
      return false;
    }
  }
}
