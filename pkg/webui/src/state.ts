// Form state and request body construction.

import { Feature, FeatureValues } from "./validation.js";

export interface FormState {
  values: FeatureValues;
  k: number;
  record: boolean;
}

export interface PredictBody {
  features: FeatureValues;
  k: number;
  record: boolean;
}

// Friendly starting point: the dataset's first row (a rice reading).
export const DEFAULT_FORM: FormState = {
  values: {
    n: 90,
    p: 42,
    k: 43,
    temperature: 20.88,
    humidity: 82.0,
    ph: 6.5,
    rainfall: 202.94,
  },
  k: 3,
  record: false,
};

export function buildPredictBody(form: FormState): PredictBody {
  return { features: { ...form.values }, k: form.k, record: form.record };
}

// What-if exploration never touches the chain.
export function buildWhatIfBody(form: FormState): PredictBody {
  return { features: { ...form.values }, k: form.k, record: false };
}

export function withValue(form: FormState, field: Feature, value: number): FormState {
  return { ...form, values: { ...form.values, [field]: value } };
}
