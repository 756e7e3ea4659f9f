// DOM wiring: hash router and the three views. All logic lives in the
// pure modules; this file only touches the document.

import { getBlocks, getPrediction, getReport, getVerify, postPredict, ApiError } from "./api.js";
import {
  renderBlockDetail,
  renderCards,
  renderChart,
  renderEmptyReport,
  renderExplorerRows,
  renderFieldErrors,
  renderVerifyBanner,
  escapeHtml,
} from "./render.js";
import { DEFAULT_FORM, FormState, buildPredictBody, withValue } from "./state.js";
import { FEATURES, Feature, RULES, validateValues } from "./validation.js";
import { WhatIfScheduler } from "./whatif.js";
import { BlocksPage } from "./types.js";

const view = () => document.getElementById("view") as HTMLElement;

let form: FormState = structuredClone(DEFAULT_FORM);

// -- predict view -------------------------------------------------------------

const SLIDER_STEP: Record<Feature, number> = {
  n: 1,
  p: 1,
  k: 1,
  temperature: 0.1,
  humidity: 0.1,
  ph: 0.05,
  rainfall: 1,
};

function predictView(): void {
  const inputs = FEATURES.map((f) => {
    const [lo, hi] = RULES[f];
    const value = form.values[f];
    return (
      `<div class="field" data-field="${f}">` +
      `<label for="in-${f}">${f}</label>` +
      `<input id="in-${f}" type="number" step="any" value="${value}">` +
      `<input id="sl-${f}" type="range" min="${lo}" max="${hi}" step="${SLIDER_STEP[f]}" value="${value}">` +
      `<span class="field-error" id="err-${f}"></span>` +
      `</div>`
    );
  }).join("");
  view().innerHTML =
    `<section class="predict">` +
    `<form id="predict-form">${inputs}` +
    `<div class="controls">` +
    `<label for="in-k">top k</label>` +
    `<input id="in-k" type="number" min="1" max="22" value="${form.k}">` +
    `<button type="submit" id="predict-btn">Predict</button>` +
    `<button type="button" id="record-btn">Record forecast</button>` +
    `</div></form>` +
    `<div id="results"></div>` +
    `</section>`;

  const scheduler = new WhatIfScheduler(postPredict, (response) => {
    const results = document.getElementById("results");
    if (results) results.innerHTML = renderCards(response);
  });

  for (const f of FEATURES) {
    const num = document.getElementById(`in-${f}`) as HTMLInputElement;
    const slider = document.getElementById(`sl-${f}`) as HTMLInputElement;
    const onChange = (raw: string) => {
      form = withValue(form, f, Number(raw));
      num.value = raw;
      slider.value = raw;
      if (showErrors()) return;
      scheduler.adjust(form); // exploration: record stays false
    };
    num.addEventListener("input", () => onChange(num.value));
    slider.addEventListener("input", () => onChange(slider.value));
  }
  const kInput = document.getElementById("in-k") as HTMLInputElement;
  kInput.addEventListener("input", () => {
    form = { ...form, k: Math.max(1, Number(kInput.value) || 1) };
  });

  const submit = async (record: boolean) => {
    if (showErrors()) return; // invalid forms never reach the network
    form = { ...form, record };
    try {
      const response = await postPredict(buildPredictBody(form));
      const results = document.getElementById("results");
      if (results) results.innerHTML = renderCards(response);
    } catch (error) {
      const results = document.getElementById("results");
      if (results && error instanceof ApiError) {
        results.innerHTML = `<p class="banner bad">request rejected (${error.status})</p>`;
      }
    } finally {
      form = { ...form, record: false };
    }
  };
  (document.getElementById("predict-form") as HTMLFormElement).addEventListener(
    "submit",
    (event) => {
      event.preventDefault();
      void submit(false);
    },
  );
  (document.getElementById("record-btn") as HTMLButtonElement).addEventListener("click", () =>
    void submit(true),
  );
}

function showErrors(): boolean {
  const errors = renderFieldErrors(validateValues(form.values));
  for (const f of FEATURES) {
    const slot = document.getElementById(`err-${f}`);
    if (slot) slot.textContent = errors[f] ?? "";
  }
  return Object.keys(errors).length > 0;
}

// -- explorer view ------------------------------------------------------------

async function explorerView(blockNumber?: number): Promise<void> {
  let page: BlocksPage;
  try {
    page = await getBlocks(undefined, 50);
  } catch {
    view().innerHTML = `<p class="banner bad">chain unavailable</p>`;
    return;
  }
  let detail = "";
  if (blockNumber !== undefined) {
    const block = page.blocks.find((b) => b.number === blockNumber);
    if (block) {
      // instamine: block n (n >= 1) holds exactly prediction n-1
      const stored = block.number >= 1 ? await getPrediction(block.number - 1).catch(() => null) : null;
      detail = renderBlockDetail(block, stored);
    }
  }
  view().innerHTML =
    `<section class="explorer">` +
    `<div class="toolbar"><button id="verify-btn">Verify chain</button><span id="verify-banner"></span></div>` +
    `<div id="detail">${detail}</div>` +
    renderExplorerRows(page) +
    `</section>`;
  (document.getElementById("verify-btn") as HTMLButtonElement).addEventListener("click", async () => {
    const banner = document.getElementById("verify-banner");
    if (banner) banner.innerHTML = renderVerifyBanner(await getVerify());
  });
  for (const row of Array.from(document.querySelectorAll<HTMLElement>(".block-row"))) {
    row.addEventListener("click", () => {
      location.hash = `#/explorer/${row.dataset.number}`;
    });
  }
}

// -- models view --------------------------------------------------------------

async function modelsView(): Promise<void> {
  try {
    const report = await getReport();
    view().innerHTML = `<section class="models">${renderChart(report)}</section>`;
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      view().innerHTML = `<section class="models">${renderEmptyReport()}</section>`;
    } else {
      view().innerHTML = `<p class="banner bad">report unavailable: ${escapeHtml(String(error))}</p>`;
    }
  }
}

// -- router -------------------------------------------------------------------

function route(): void {
  const hash = location.hash || "#/predict";
  const explorerMatch = /^#\/explorer(?:\/(\d+))?$/.exec(hash);
  for (const link of Array.from(document.querySelectorAll<HTMLAnchorElement>("nav a"))) {
    link.classList.toggle("active", hash.startsWith(link.hash));
  }
  if (explorerMatch) {
    void explorerView(explorerMatch[1] === undefined ? undefined : Number(explorerMatch[1]));
  } else if (hash === "#/models") {
    void modelsView();
  } else {
    predictView();
  }
}

window.addEventListener("hashchange", route);
window.addEventListener("DOMContentLoaded", route);
