// What-if slider traffic control: trailing debounce (one request per
// window) and latest-wins on responses, so dragging a slider settles on
// the final position's ranking. Exploration requests never record.

import { buildWhatIfBody, FormState, PredictBody } from "./state.js";
import { PredictResponse } from "./types.js";

export const WHATIF_WINDOW_MS = 250; // at most ~4 requests per second

export class WhatIfScheduler {
  private pending: FormState | null = null;
  private lastSentKey: string | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private generation = 0;

  constructor(
    private send: (body: PredictBody) => Promise<PredictResponse>,
    private onResult: (response: PredictResponse) => void,
    private windowMs: number = WHATIF_WINDOW_MS,
  ) {}

  adjust(form: FormState): void {
    const key = JSON.stringify([form.values, form.k]);
    if (key === this.lastSentKey && this.pending === null) {
      return; // slider moved without changing the value
    }
    this.pending = form;
    if (this.timer === null) {
      this.timer = setTimeout(() => this.flush(), this.windowMs);
    }
  }

  private flush(): void {
    this.timer = null;
    if (this.pending === null) return;
    const form = this.pending;
    this.pending = null;
    const body = buildWhatIfBody(form);
    this.lastSentKey = JSON.stringify([form.values, form.k]);
    const generation = ++this.generation;
    this.send(body).then(
      (response) => {
        if (generation === this.generation) {
          this.onResult(response); // stale responses lose
        }
      },
      () => {
        /* exploration errors are silent; the form keeps its last ranking */
      },
    );
  }
}
