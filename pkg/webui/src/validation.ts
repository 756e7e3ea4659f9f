// Client-side validation. The intervals MUST stay identical to the
// service's defaults (it rejects with the same codes); the parity test
// pins every bound.

export const FEATURES = [
  "n",
  "p",
  "k",
  "temperature",
  "humidity",
  "ph",
  "rainfall",
] as const;

export type Feature = (typeof FEATURES)[number];

export type FeatureValues = Record<Feature, number>;

export const RULES: Record<Feature, readonly [number, number]> = {
  n: [0, 300],
  p: [0, 300],
  k: [0, 300],
  temperature: [-20, 60],
  humidity: [0, 100],
  ph: [0, 14],
  rainfall: [0, 1000],
};

export const NON_FINITE = "NON_FINITE";

export interface FieldError {
  field: Feature;
  code: string;
}

export function rangeCode(feature: Feature): string {
  return `${feature.toUpperCase()}_RANGE`;
}

export function validateValues(values: FeatureValues): FieldError[] {
  const errors: FieldError[] = [];
  for (const feature of FEATURES) {
    const value = values[feature];
    if (typeof value !== "number" || !Number.isFinite(value)) {
      errors.push({ field: feature, code: NON_FINITE });
      continue;
    }
    const [lo, hi] = RULES[feature];
    if (value < lo || value > hi) {
      errors.push({ field: feature, code: rangeCode(feature) });
    }
  }
  return errors;
}
