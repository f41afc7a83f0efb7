import type { Judgment, R1Verdict, R2Verdict, Round, Verdict } from './types.js';

/** Violence-type suggestions seeded from the published error-analysis vocabulary. */
export const SEED_VIOLENCE_TYPES = [
  'Abandonment',
  'Aggressive patient',
  'Psychological',
  'Self-inflicted',
  'Verbal',
  'Witnessed',
];

export const R1_VERDICTS: R1Verdict[] = ['exact', 'non_match'];
export const R2_VERDICTS: R2Verdict[] = ['gbv_other_pattern', 'partial', 'speculation', 'not_gbv'];

export const VERDICT_LABELS: Record<Verdict, string> = {
  exact: 'Exact instance of the pattern',
  non_match: 'Not a match',
  gbv_other_pattern: 'GBV, but another pattern',
  partial: 'Partial match',
  speculation: 'Speculation of violence',
  not_gbv: 'Not a GBV report',
};

/**
 * Verdict entry state for the current fragment. The round-2 controls
 * (category + free violence-type tag with autocomplete) only exist for
 * round-2 sessions, whose queues hold round-1 non-matches by construction.
 */
export class VerdictForm {
  verdict: Verdict | null = null;
  violenceType = '';
  private learned: string[] = [];

  constructor(readonly round: Round) {}

  options(): Verdict[] {
    return this.round === 'r1' ? R1_VERDICTS : R2_VERDICTS;
  }

  showsViolenceType(): boolean {
    return this.round === 'r2';
  }

  setVerdict(verdict: Verdict): boolean {
    if (!(this.options() as Verdict[]).includes(verdict)) {
      return false;
    }
    this.verdict = verdict;
    return true;
  }

  /** Pick a verdict by 1-based position, mirroring the keyboard digits. */
  setByIndex(index: number): boolean {
    const options = this.options();
    if (index < 1 || index > options.length) {
      return false;
    }
    return this.setVerdict(options[index - 1]);
  }

  setViolenceType(value: string): void {
    this.violenceType = value;
  }

  /** Free tagging is emergent: remember tags so they autocomplete later. */
  learn(tag: string): void {
    const clean = tag.trim();
    if (clean && !this.suggestionPool().includes(clean)) {
      this.learned.push(clean);
    }
  }

  private suggestionPool(): string[] {
    return [...SEED_VIOLENCE_TYPES, ...this.learned];
  }

  suggestions(prefix: string): string[] {
    const needle = prefix.trim().toLowerCase();
    const pool = this.suggestionPool();
    if (!needle) {
      return pool.slice(0, 6);
    }
    return pool.filter((t) => t.toLowerCase().includes(needle)).slice(0, 6);
  }

  isComplete(): boolean {
    return this.verdict !== null;
  }

  toJudgment(matchId: string, annotator: string): Judgment {
    if (this.verdict === null) {
      throw new Error('verdict not chosen');
    }
    const tag = this.violenceType.trim();
    return {
      match_id: matchId,
      annotator_id: annotator,
      round: this.round,
      verdict: this.verdict,
      ...(this.round === 'r2' && tag ? { violence_type: tag } : {}),
    };
  }

  reset(): void {
    if (this.round === 'r2' && this.violenceType.trim()) {
      this.learn(this.violenceType);
    }
    this.verdict = null;
    this.violenceType = '';
  }
}
