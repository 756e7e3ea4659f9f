import { describe, expect, it } from "vitest";

import {
  abbreviate,
  formatTimestamp,
  renderBlockDetail,
  renderCards,
  renderChart,
  renderEmptyReport,
  renderExplorerRows,
  renderVerifyBanner,
  shortHash,
} from "../src/render.js";
import { BenchmarkReport, BlocksPage, PredictResponse, StoredPrediction } from "../src/types.js";

// row-0 ranking as the API returns it
const ROW0_RESPONSE: PredictResponse = {
  predictions: [
    { crop: "rice", score: 0.97 },
    { crop: "jute", score: 0.02 },
    { crop: "coconut", score: 0.01 },
  ],
  transaction: null,
};

describe("prediction cards", () => {
  it("renders one card per ranked crop with rice on top", () => {
    const html = renderCards(ROW0_RESPONSE);
    expect(html.match(/class="card( top)?"/g)).toHaveLength(3);
    const top = html.indexOf('class="card top"');
    expect(top).toBeGreaterThanOrEqual(0);
    expect(html.slice(top, top + 120)).toContain('data-crop="rice"');
  });

  it("links the recorded transaction to its block", () => {
    const recorded: PredictResponse = {
      ...ROW0_RESPONSE,
      transaction: { tx_hash: "0x" + "ab".repeat(32), block_number: 7, prediction_index: 6 },
    };
    const html = renderCards(recorded);
    expect(html).toContain('href="#/explorer/7"');
    expect(html).toContain("prediction #6");
  });

  it("shows the ledger error note when recording failed", () => {
    const failed: PredictResponse = { ...ROW0_RESPONSE, transaction: { error: "out of gas" } };
    expect(renderCards(failed)).toContain("not recorded: out of gas");
  });

  it("escapes crop names", () => {
    const sneaky: PredictResponse = {
      predictions: [{ crop: "<img src=x>", score: 1 }],
      transaction: null,
    };
    expect(renderCards(sneaky)).not.toContain("<img");
  });
});

describe("explorer", () => {
  const page: BlocksPage = {
    height: 2,
    blocks: [
      { number: 2, timestamp: 1_710_970_300, hash: "0xbeef", gas_used: 42056, gas_limit: 6721975, tx_count: 1 },
      { number: 1, timestamp: 1_710_970_200, hash: "0xcafe", gas_used: 42056, gas_limit: 6721975, tx_count: 1 },
      { number: 0, timestamp: 1_710_970_112, hash: "0xdead", gas_used: 0, gas_limit: 6721975, tx_count: 0 },
    ],
  };

  it("renders rows newest first with per-block transaction counts", () => {
    const html = renderExplorerRows(page);
    const numbers = [...html.matchAll(/data-number="(\d+)"/g)].map((m) => Number(m[1]));
    expect(numbers).toEqual([2, 1, 0]);
    expect(html).toContain("no transactions");
    expect(html.match(/1 transaction/g)).toHaveLength(2);
  });

  it("renders the decoded record in the block detail", () => {
    const stored: StoredPrediction = {
      index: 0,
      cropName: "rice",
      n: "90.00", p: "42.00", k: "43.00", ph: "6.50",
      rain: "202.94", temp: "20.88", hum: "82.00",
    };
    const html = renderBlockDetail(page.blocks[1], stored);
    expect(html).toContain("stored prediction #0");
    expect(html).toContain("rice");
    expect(html).toContain("6.50"); // two-decimal fixed point, verbatim
    expect(html).toContain("202.94");
  });

  it("banner reflects the verification result", () => {
    expect(renderVerifyBanner({ ok: true })).toContain("chain verified");
    const bad = renderVerifyBanner({ ok: false, block_number: 3, reason: "block hash mismatch" });
    expect(bad).toContain("block 3");
    expect(bad).toContain("block hash mismatch");
  });

  it("formats timestamps as UTC", () => {
    expect(formatTimestamp(1_710_970_112)).toBe("2024-03-20 21:28:32");
  });

  it("shortens long hashes", () => {
    expect(shortHash("0x" + "12".repeat(32))).toMatch(/^0x12121212…1212$/);
  });
});

describe("models chart", () => {
  const report: BenchmarkReport = {
    metrics: [
      { algorithm: "Decision Tree", accuracy: 97.45, precision: 97.47, recall: 97.45, f1: 97.43 },
      { algorithm: "Gaussian Naive Bayes", accuracy: 99.45, precision: 99.51, recall: 99.45, f1: 99.45 },
      { algorithm: "Support Vector Machine", accuracy: 95.09, precision: 95.6, recall: 95.09, f1: 94.83 },
      { algorithm: "Logistic Regression", accuracy: 94.55, precision: 95.49, recall: 94.55, f1: 94.4 },
      { algorithm: "Random Forest", accuracy: 99.45, precision: 99.49, recall: 99.45, f1: 99.45 },
      { algorithm: "K-Nearest Neighbors", accuracy: 98.91, precision: 98.93, recall: 98.91, f1: 98.91 },
      { algorithm: "Neural Network", accuracy: 98.0, precision: 98.03, recall: 98.0, f1: 97.99 },
    ],
    chart: {},
  };

  it("renders seven bars with RF at the maximum height", () => {
    const html = renderChart(report);
    const accuracies = [...html.matchAll(/data-accuracy="([\d.]+)"/g)].map((m) => Number(m[1]));
    expect(accuracies).toHaveLength(7);
    const rf = report.metrics.find((r) => r.algorithm === "Random Forest")!.accuracy;
    expect(Math.max(...accuracies)).toBe(rf);
  });

  it("hover titles carry the exact metrics", () => {
    const html = renderChart(report);
    expect(html).toContain("Random Forest: accuracy 99.45%, precision 99.49%, recall 99.45%");
  });

  it("abbreviates algorithm labels", () => {
    expect(abbreviate("Random Forest")).toBe("RF");
    expect(abbreviate("K-Nearest Neighbors")).toBe("KNN");
  });

  it("offers the bench hint when no report exists", () => {
    expect(renderEmptyReport()).toContain("cropcast bench");
  });
});
