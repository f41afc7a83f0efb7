import type { Round } from './types.js';

export type KeyAction =
  | { kind: 'choose'; index: number }
  | { kind: 'submit' }
  | { kind: 'focus-type' }
  | { kind: 'reload' };

/**
 * Keyboard map covering the whole judging loop:
 * digits pick a verdict, Enter submits, "t" jumps to the violence-type box
 * (round 2), "r" reloads the queue.
 */
export function keyToAction(key: string, round: Round, typing: boolean): KeyAction | null {
  if (key === 'Enter') {
    return { kind: 'submit' };
  }
  if (typing) {
    return null; // let other keys edit the text field
  }
  if (/^[0-9]$/.test(key)) {
    const index = Number(key);
    const max = round === 'r1' ? 2 : 4;
    return index >= 1 && index <= max ? { kind: 'choose', index } : null;
  }
  if (key === 't' && round === 'r2') {
    return { kind: 'focus-type' };
  }
  if (key === 'r') {
    return { kind: 'reload' };
  }
  return null;
}
