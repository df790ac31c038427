import * as api from './api';
import { FEEDBACK_LABELS, renderChart } from './chart';

export const POLICIES = ['staged-paper', 'fixed-paper', 'shannon', 'knuth', 'most-parts'];

// Every (bulls, cows) pair the rules allow, ascending bulls then cows.
// 3B-1C is impossible and deliberately absent, so the picker has 14 options.
export const FEEDBACK_OPTIONS: Array<[number, number]> = [
  [0, 0], [0, 1], [0, 2], [0, 3], [0, 4],
  [1, 0], [1, 1], [1, 2], [1, 3],
  [2, 0], [2, 1], [2, 2],
  [3, 0],
  [4, 0],
];

// digits 1-6 keep their fixed colors everywhere in the UI
const PEG_COLORS = ['#d9342b', '#2b9e5f', '#2b64d9', '#e0c22b', '#8d3fc4', '#e07f2b'];

const SCORE_EPS = 1e-9;

export class App {
  pending: Promise<void> = Promise.resolve();

  private session: api.SessionState | null = null;
  private busy = false;

  constructor(private root: HTMLElement, restoreId?: string) {
    if (restoreId) {
      this.run(async () => {
        try {
          this.session = await api.getSession(restoreId);
          this.renderGame();
        } catch {
          // stale or foreign id in the URL; fall back to a fresh start
          this.renderStart();
        }
      });
    } else {
      this.renderStart();
    }
  }

  private run(action: () => Promise<void>): void {
    if (this.busy) return;
    this.busy = true;
    this.setButtonsDisabled(true);
    this.pending = action()
      .catch((err) => this.showError(err instanceof Error ? err.message : String(err)))
      .finally(() => {
        this.busy = false;
        this.setButtonsDisabled(false);
      });
  }

  private setButtonsDisabled(disabled: boolean): void {
    this.root.querySelectorAll('button').forEach((b) => {
      (b as HTMLButtonElement).disabled = disabled;
    });
  }

  private showError(message: string): void {
    let banner = this.root.querySelector<HTMLElement>('#error');
    if (!banner) {
      banner = document.createElement('div');
      banner.id = 'error';
      banner.className = 'error-banner';
      this.root.prepend(banner);
    }
    banner.textContent = message;
  }

  private renderStart(): void {
    this.root.innerHTML = `
      <h1>Mastermind assistant</h1>
      <p>You hold the physical game; the solver suggests your guesses.</p>
      <label>Strategy
        <select id="policy">
          ${POLICIES.map((p) => `<option value="${p}">${p}</option>`).join('')}
        </select>
      </label>
      <button id="start">Start session</button>
    `;
    this.root.querySelector<HTMLButtonElement>('#start')!.addEventListener('click', () => {
      const policy = this.root.querySelector<HTMLSelectElement>('#policy')!.value;
      this.run(async () => {
        this.session = await api.createSession(policy);
        window.location.hash = this.session.id;
        this.renderGame();
      });
    });
  }

  private pegMarkup(code: string): string {
    const pegs = Array.from(code)
      .map((d) => {
        const color = PEG_COLORS[Number(d) - 1];
        return `<span class="peg" style="background:${color}">${d}</span>`;
      })
      .join('');
    return `<span class="pegs">${pegs}</span><span class="digits">${code}</span>`;
  }

  private renderGame(): void {
    const s = this.session!;
    const solved = s.status === 'solved';
    const contradicted = s.status === 'contradicted';

    const statusLine = solved
      ? `<div id="status" class="status solved">Solved in ${s.history?.length ?? s.turn - 1} guesses!</div>`
      : contradicted
        ? `<div id="status" class="status contradicted">Impossible feedback history</div>`
        : `<div id="status" class="status active">Turn <span id="turn">${s.turn}</span></div>`;

    const suggestionBlock = s.suggestion
      ? `<div id="suggestion" class="suggestion">${this.pegMarkup(s.suggestion)}</div>`
      : '';

    const historyRows = (s.history ?? [])
      .map((h) => `<tr><td>${this.pegMarkup(h.guess)}</td><td>${h.bulls}B-${h.cows}C</td></tr>`)
      .join('');

    this.root.innerHTML = `
      <h1>Mastermind assistant</h1>
      ${statusLine}
      ${contradicted ? `<p id="explanation">${s.explanation ?? 'Some feedback entry must be wrong. Undo it.'}</p>` : ''}
      ${suggestionBlock}
      <div class="meter">
        <span id="remaining">${s.remaining}</span> candidate codes remain
      </div>
      ${s.status === 'active' ? this.pickerMarkup() : ''}
      <button id="undo">Undo last feedback</button>
      <table id="history"><tbody>${historyRows}</tbody></table>
      ${s.status === 'active' ? this.whatIfMarkup() : ''}
    `;
    this.wireGame();
  }

  private pickerMarkup(): string {
    const buttons = FEEDBACK_OPTIONS.map(
      ([b, c], i) =>
        `<button class="fb-option" data-bulls="${b}" data-cows="${c}">${FEEDBACK_LABELS[i]}</button>`,
    ).join('');
    return `<div id="feedback-picker"><p>Opponent's response:</p>${buttons}</div>`;
  }

  private whatIfMarkup(): string {
    return `
      <details id="what-if" open>
        <summary>What-if explorer</summary>
        <input id="whatif-input" maxlength="4" placeholder="e.g. 1234">
        <button id="whatif-go">Explore</button>
        <div id="whatif-result"></div>
      </details>
    `;
  }

  private wireGame(): void {
    this.root.querySelectorAll<HTMLButtonElement>('.fb-option').forEach((btn) => {
      btn.addEventListener('click', () => {
        const bulls = Number(btn.dataset.bulls);
        const cows = Number(btn.dataset.cows);
        this.run(async () => {
          const state = await api.sendFeedback(this.session!.id, bulls, cows);
          // re-fetch for the history rows; display only what the service says
          this.session = { ...(await api.getSession(state.id)), explanation: state.explanation };
          this.renderGame();
        });
      });
    });

    this.root.querySelector<HTMLButtonElement>('#undo')?.addEventListener('click', () => {
      this.run(async () => {
        const state = await api.undo(this.session!.id);
        this.session = await api.getSession(state.id);
        this.renderGame();
      });
    });

    this.root.querySelector<HTMLButtonElement>('#whatif-go')?.addEventListener('click', () => {
      const guess = this.root.querySelector<HTMLInputElement>('#whatif-input')!.value.trim();
      this.run(async () => {
        const result = this.root.querySelector<HTMLElement>('#whatif-result')!;
        if (!/^[1-6]{4}$/.test(guess)) {
          result.innerHTML = '<p class="invalid">Enter four digits 1-6.</p>';
          return;
        }
        const explored = await api.whatIf(this.session!.id, guess);
        const reference = await api.whatIf(this.session!.id, this.session!.suggestion!);
        const best = explored.score >= reference.score - SCORE_EPS;
        result.innerHTML = `
          <p>
            ${this.pegMarkup(explored.guess)}
            score <span id="whatif-score">${explored.score.toFixed(4)}</span>
            vs suggestion ${reference.score.toFixed(4)}
            ${best ? '<span id="best-badge" class="badge">best</span>' : ''}
          </p>
          <div id="chart" class="chart"></div>
        `;
        renderChart(result.querySelector<HTMLElement>('#chart')!, explored.counts);
      });
    });
  }
}

export function createApp(root: HTMLElement, restoreId?: string): App {
  return new App(root, restoreId);
}
