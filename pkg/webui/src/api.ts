// Thin typed client for the /api/v1 endpoints. The console performs no
// computation of its own; every displayed number comes from here.

import { PredictBody } from "./state.js";
import {
  BenchmarkReport,
  BlocksPage,
  PredictResponse,
  StoredPrediction,
  VerifyResult,
} from "./types.js";

export const API = "/api/v1";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`API error ${status}`);
  }
}

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(`${API}${path}`);
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body.detail ?? body);
  }
  return body as T;
}

export async function postPredict(body: PredictBody): Promise<PredictResponse> {
  const response = await fetch(`${API}/predict`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, payload.detail ?? payload);
  }
  return payload as PredictResponse;
}

export function getBlocks(from?: number, limit = 20): Promise<BlocksPage> {
  const params = new URLSearchParams();
  if (from !== undefined) params.set("from", String(from));
  params.set("limit", String(limit));
  return getJson<BlocksPage>(`/chain/blocks?${params}`);
}

export function getPrediction(index: number): Promise<StoredPrediction> {
  return getJson<StoredPrediction>(`/predictions/${index}`);
}

export function getVerify(): Promise<VerifyResult> {
  return getJson<VerifyResult>("/chain/verify");
}

export function getReport(): Promise<BenchmarkReport> {
  return getJson<BenchmarkReport>("/report");
}
