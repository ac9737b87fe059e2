// Form metadata for the PARTIAL-automation inputs of the built-in methods.
// View-layer only: the service remains the validator and single source of
// truth; a missing/invalid field comes back as its 422 checklist.

export interface FieldSpec {
  name: string;
  kind: "number" | "flag" | "choice";
  unit?: string;
  choices?: string[];
  initial: number | boolean | string;
}

export const METHOD_FIELDS: Record<string, FieldSpec[]> = {
  rula: [
    { name: "muscle_use_static", kind: "flag", initial: false },
    { name: "force_load_kg", kind: "number", unit: "kg", initial: 0 },
    {
      name: "wrist_twist_range",
      kind: "choice",
      choices: ["mid", "end"],
      initial: "mid",
    },
  ],
  reba: [
    { name: "load_kg", kind: "number", unit: "kg", initial: 0 },
    {
      name: "coupling",
      kind: "choice",
      choices: ["good", "fair", "poor", "unacceptable"],
      initial: "good",
    },
    { name: "activity_static", kind: "flag", initial: false },
    { name: "activity_repeated", kind: "flag", initial: false },
    { name: "activity_rapid_change", kind: "flag", initial: false },
  ],
  owas: [{ name: "load_class", kind: "number", unit: "1|2|3", initial: 1 }],
  niosh: [
    { name: "h_cm", kind: "number", unit: "cm", initial: 30 },
    { name: "v_cm", kind: "number", unit: "cm", initial: 75 },
    { name: "d_cm", kind: "number", unit: "cm", initial: 30 },
    { name: "a_deg", kind: "number", unit: "deg", initial: 0 },
    { name: "f_per_min", kind: "number", unit: "lifts/min", initial: 1 },
    {
      name: "coupling",
      kind: "choice",
      choices: ["good", "fair", "poor"],
      initial: "good",
    },
  ],
  snook: [
    { name: "action", kind: "choice", choices: ["lift", "carry"], initial: "lift" },
    { name: "sex", kind: "choice", choices: ["male", "female"], initial: "male" },
    { name: "frequency_per_min", kind: "number", unit: "/min", initial: 1 },
    { name: "distance", kind: "number", unit: "cm or m", initial: 51 },
    { name: "demand_kg", kind: "number", unit: "kg", initial: 10 },
  ],
};

export const METHOD_IDS = Object.keys(METHOD_FIELDS);
