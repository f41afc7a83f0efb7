import { ApiClient } from './api.js';
import { Dashboard } from './dashboard.js';
import { keyToAction } from './keyboard.js';
import { renderFragment } from './render.js';
import { UiSession } from './session.js';
import type { Round, Verdict } from './types.js';
import { VERDICT_LABELS, VerdictForm } from './verdict.js';

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

let session: UiSession | null = null;
let form: VerdictForm | null = null;
let dashboard: Dashboard | null = null;

function toast(message: string, isError = false): void {
  const el = $('toast');
  el.textContent = message;
  el.className = isError ? 'toast error' : 'toast';
  setTimeout(() => {
    el.textContent = '';
    el.className = 'toast';
  }, 4000);
}

function renderVerdictControls(): void {
  if (!form) return;
  const buttons = form
    .options()
    .map((v, i) => {
      const pressed = form!.verdict === v ? ' pressed' : '';
      return (
        `<button class="verdict${pressed}" data-verdict="${v}">` +
        `<kbd>${i + 1}</kbd> ${VERDICT_LABELS[v]}</button>`
      );
    })
    .join('');
  $('verdict-buttons').innerHTML = buttons;
  for (const button of document.querySelectorAll<HTMLButtonElement>('#verdict-buttons button')) {
    button.addEventListener('click', () => {
      form!.setVerdict(button.dataset.verdict as Verdict);
      renderVerdictControls();
    });
  }
  $('type-row').style.display = form.showsViolenceType() ? '' : 'none';
}

function renderCurrent(): void {
  if (!session) return;
  const fragment = session.current();
  const target = $('fragment');
  if (fragment === null) {
    target.innerHTML = '<p class="done">Queue finished. Thank you.</p>';
  } else {
    target.innerHTML = renderFragment(fragment);
  }
  $('progress').textContent = `pending ${session.pending} · submitted ${session.submitted}`;
  renderVerdictControls();
}

function renderSuggestions(): void {
  if (!form) return;
  const input = $('violence-type') as HTMLInputElement;
  const list = form.suggestions(input.value);
  $('type-suggestions').innerHTML = list
    .map((t) => `<button class="suggestion" data-tag="${t}">${t}</button>`)
    .join(' ');
  for (const button of document.querySelectorAll<HTMLButtonElement>('#type-suggestions button')) {
    button.addEventListener('click', () => {
      input.value = button.dataset.tag ?? '';
      form!.setViolenceType(input.value);
    });
  }
}

async function submitCurrent(): Promise<void> {
  if (!session || !form || !form.isComplete()) {
    toast('choose a verdict first', true);
    return;
  }
  const typeInput = $('violence-type') as HTMLInputElement;
  form.setViolenceType(typeInput.value);
  const verdict = form.verdict as Verdict;
  const ok = await session.submit(verdict, form.showsViolenceType() ? typeInput.value : undefined);
  if (ok) {
    form.reset();
    typeInput.value = '';
    renderCurrent();
    void dashboard?.refresh().catch(() => undefined);
  } else {
    toast(session.lastError ?? 'submission rejected', true);
    renderCurrent();
  }
}

async function loadSession(): Promise<void> {
  const base = (($('server') as HTMLInputElement).value || window.location.origin).replace(/\/$/, '');
  const annotator = ($('annotator') as HTMLInputElement).value.trim();
  const token = ($('token') as HTMLInputElement).value.trim();
  const round = ($('round') as HTMLSelectElement).value as Round;
  if (!annotator || !token) {
    toast('annotator and token are required', true);
    return;
  }
  const api = new ApiClient(base, token);
  session = new UiSession(api, annotator, round);
  form = new VerdictForm(round);
  dashboard = new Dashboard(api, (section, html) => {
    $(`table-${section}`).innerHTML = html;
  });
  try {
    await session.load();
    renderCurrent();
    renderSuggestions();
    await dashboard.refresh();
    dashboard.startPolling(5000);
    toast(`loaded ${session.queue.length} pending fragments`);
  } catch (error) {
    toast(error instanceof Error ? error.message : String(error), true);
  }
}

function onKey(event: KeyboardEvent): void {
  if (!session || !form) return;
  const typing = document.activeElement === $('violence-type');
  const action = keyToAction(event.key, form.round, typing);
  if (!action) return;
  event.preventDefault();
  switch (action.kind) {
    case 'choose':
      form.setByIndex(action.index);
      renderVerdictControls();
      break;
    case 'submit':
      void submitCurrent();
      break;
    case 'focus-type':
      $('violence-type').focus();
      break;
    case 'reload':
      void session.load().then(renderCurrent);
      break;
  }
}

window.addEventListener('DOMContentLoaded', () => {
  $('load').addEventListener('click', () => void loadSession());
  $('submit').addEventListener('click', () => void submitCurrent());
  ($('violence-type') as HTMLInputElement).addEventListener('input', renderSuggestions);
  document.addEventListener('keydown', onKey);
});
