// Pure renderers: API payloads in, HTML strings out. Keeping these free
// of DOM access makes every view testable without a browser.

import { FieldError } from "./validation.js";
import {
  BenchmarkReport,
  BlockSummary,
  BlocksPage,
  PredictResponse,
  StoredPrediction,
  VerifyResult,
  isTxInfo,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function shortHash(hash: string): string {
  return hash.length > 14 ? `${hash.slice(0, 10)}…${hash.slice(-4)}` : hash;
}

export function formatTimestamp(unixSeconds: number): string {
  return new Date(unixSeconds * 1000).toISOString().replace("T", " ").slice(0, 19);
}

export function formatScore(score: number): string {
  return `${(100 * score).toFixed(1)}%`;
}

// -- predict view ------------------------------------------------------------

export function renderCards(response: PredictResponse): string {
  const cards = response.predictions
    .map((p, rank) => {
      const top = rank === 0 ? " top" : "";
      return (
        `<div class="card${top}" data-crop="${escapeHtml(p.crop)}">` +
        `<span class="rank">#${rank + 1}</span>` +
        `<span class="crop">${escapeHtml(p.crop)}</span>` +
        `<span class="score">${formatScore(p.score)}</span>` +
        `</div>`
      );
    })
    .join("");
  return `<div class="cards">${cards}</div>${renderTransaction(response)}`;
}

function renderTransaction(response: PredictResponse): string {
  const tx = response.transaction;
  if (tx === null) return "";
  if (isTxInfo(tx)) {
    return (
      `<p class="tx-note">recorded: tx <code>${shortHash(tx.tx_hash)}</code> in ` +
      `<a href="#/explorer/${tx.block_number}">block ${tx.block_number}</a> ` +
      `(prediction #${tx.prediction_index})</p>`
    );
  }
  return `<p class="tx-note error">not recorded: ${escapeHtml(tx.error)}</p>`;
}

export function renderFieldErrors(errors: FieldError[]): Record<string, string> {
  const byField: Record<string, string> = {};
  for (const e of errors) {
    byField[e.field] = e.code;
  }
  return byField;
}

// -- explorer view -----------------------------------------------------------

export function renderExplorerRows(page: BlocksPage): string {
  const rows = page.blocks
    .map(
      (b) =>
        `<tr class="block-row" data-number="${b.number}">` +
        `<td>${b.number}</td>` +
        `<td>${formatTimestamp(b.timestamp)}</td>` +
        `<td><code>${shortHash(b.hash)}</code></td>` +
        `<td>${b.gas_used}</td>` +
        `<td>${b.gas_limit}</td>` +
        `<td>${b.tx_count === 0 ? "no transactions" : `${b.tx_count} transaction`}</td>` +
        `</tr>`,
    )
    .join("");
  return (
    `<table class="blocks"><thead><tr>` +
    `<th>Block</th><th>Mined on</th><th>Hash</th><th>Gas used</th><th>Gas limit</th><th>Txs</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderBlockDetail(block: BlockSummary, stored: StoredPrediction | null): string {
  const head =
    `<h3>Block ${block.number}</h3>` +
    `<dl><dt>mined on</dt><dd>${formatTimestamp(block.timestamp)}</dd>` +
    `<dt>hash</dt><dd><code>${escapeHtml(block.hash)}</code></dd>` +
    `<dt>gas</dt><dd>${block.gas_used} / ${block.gas_limit}</dd></dl>`;
  if (stored === null) {
    return `${head}<p>no transactions</p>`;
  }
  const fields: Array<[string, string]> = [
    ["crop", stored.cropName],
    ["N", stored.n],
    ["P", stored.p],
    ["K", stored.k],
    ["pH", stored.ph],
    ["rainfall", stored.rain],
    ["temperature", stored.temp],
    ["humidity", stored.hum],
  ];
  const rows = fields
    .map(([label, value]) => `<tr><th>${label}</th><td>${escapeHtml(value)}</td></tr>`)
    .join("");
  return `${head}<h4>stored prediction #${stored.index}</h4><table class="record">${rows}</table>`;
}

export function renderVerifyBanner(result: VerifyResult): string {
  if (result.ok) {
    return `<div class="banner ok">chain verified: every hash and replay checks out</div>`;
  }
  return (
    `<div class="banner bad">tamper alert at block ${result.block_number}: ` +
    `${escapeHtml(result.reason ?? "unknown")}</div>`
  );
}

// -- models view -------------------------------------------------------------

export function renderChart(report: BenchmarkReport): string {
  const bars = report.metrics
    .map((row) => {
      const height = Math.max(2, Math.round(row.accuracy));
      const title =
        `${row.algorithm}: accuracy ${row.accuracy.toFixed(2)}%, ` +
        `precision ${row.precision.toFixed(2)}%, recall ${row.recall.toFixed(2)}%, ` +
        `f1 ${row.f1.toFixed(2)}%`;
      return (
        `<div class="bar-wrap" title="${escapeHtml(title)}">` +
        `<div class="bar" style="height:${height * 2}px" data-accuracy="${row.accuracy}"></div>` +
        `<span class="value">${row.accuracy.toFixed(2)}</span>` +
        `<span class="label">${escapeHtml(abbreviate(row.algorithm))}</span>` +
        `</div>`
      );
    })
    .join("");
  return `<div class="chart">${bars}</div>`;
}

export function renderEmptyReport(): string {
  return `<p class="empty">no benchmark report yet — run <code>cropcast bench</code> first</p>`;
}

const ABBREVIATIONS: Record<string, string> = {
  "Decision Tree": "DT",
  "Gaussian Naive Bayes": "NB",
  "Support Vector Machine": "SVM",
  "Logistic Regression": "LR",
  "Random Forest": "RF",
  "K-Nearest Neighbors": "KNN",
  "Neural Network": "NN",
};

export function abbreviate(algorithm: string): string {
  return ABBREVIATIONS[algorithm] ?? algorithm;
}
