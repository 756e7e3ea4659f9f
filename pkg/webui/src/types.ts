// API payload shapes, mirroring the service's /api/v1 responses.

export interface RankedPrediction {
  crop: string;
  score: number;
}

export interface TxInfo {
  tx_hash: string;
  block_number: number;
  prediction_index: number;
}

export interface TxError {
  error: string;
}

export interface PredictResponse {
  predictions: RankedPrediction[];
  transaction: TxInfo | TxError | null;
}

export interface BlockSummary {
  number: number;
  timestamp: number;
  hash: string;
  gas_used: number;
  gas_limit: number;
  tx_count: number;
}

export interface BlocksPage {
  blocks: BlockSummary[];
  height: number;
}

export interface StoredPrediction {
  index: number;
  cropName: string;
  n: string;
  p: string;
  k: string;
  ph: string;
  rain: string;
  temp: string;
  hum: string;
}

export interface VerifyResult {
  ok: boolean;
  block_number?: number;
  reason?: string;
}

export interface ReportRow {
  algorithm: string;
  accuracy: number;
  precision: number;
  recall: number;
  f1: number;
}

export interface BenchmarkReport {
  metrics: ReportRow[];
  chart: Record<string, number>;
}

export function isTxInfo(tx: TxInfo | TxError | null): tx is TxInfo {
  return tx !== null && "tx_hash" in tx;
}
