// Live assessment panel model. Holds the selected method, the form values
// for its context fields, and exactly what the service last answered: the
// displayed numbers are lifted verbatim from the raw response (no client
// math), and a 422 becomes the missing-field checklist.

import type { ServiceClient } from "./client";
import { ServiceError } from "./client";
import { METHOD_FIELDS } from "./descriptors";
import type { AssessmentEntry, ResultEntry } from "./types";
import { isFailure } from "./types";

export interface PanelView {
  method: string;
  status: "empty" | "scored" | "missing-context" | "error";
  grand?: number | string;
  level?: number;
  levelLabel?: string;
  subscores?: Record<string, unknown>;
  checklist: string[];
  error?: string;
}

export class AssessmentPanel {
  method: string;
  values: Record<string, unknown> = {};
  lastResponseText: string | null = null;
  private lastEntry: ResultEntry | null = null;
  private checklist: string[] = [];
  private lastError: string | null = null;

  constructor(method = "rula") {
    this.method = method;
    this.selectMethod(method);
  }

  selectMethod(method: string): void {
    if (!METHOD_FIELDS[method]) {
      throw new Error(`unknown method ${method}`);
    }
    this.method = method;
    // the form starts empty: until the user supplies the PARTIAL-automation
    // inputs, the service's 422 checklist is the display
    this.values = {};
    this.lastResponseText = null;
    this.lastEntry = null;
    this.checklist = [];
    this.lastError = null;
  }

  setValue(name: string, value: unknown): void {
    this.values[name] = value;
  }

  /** Re-query the service for the session's current posture. */
  async refresh(client: ServiceClient, sessionId: string): Promise<PanelView> {
    this.lastError = null;
    try {
      const raw = await client.assessRaw(sessionId, [this.method], this.values);
      this.lastResponseText = raw.text;
      this.lastEntry = raw.body.results[0] ?? null;
      this.checklist = [];
    } catch (err) {
      if (err instanceof ServiceError && err.status === 422) {
        this.lastEntry = null;
        this.lastResponseText = null;
        this.checklist = extractChecklist(err.detail, this.method);
        if (this.checklist.length === 0) {
          this.lastError = JSON.stringify(err.detail);
        }
      } else {
        this.lastEntry = null;
        this.lastResponseText = null;
        this.lastError = err instanceof Error ? err.message : String(err);
      }
    }
    return this.view();
  }

  /** Apply a result entry that arrived piggybacked (e.g. step colors). */
  applyEntry(entry: ResultEntry, rawText: string): void {
    this.lastEntry = entry;
    this.lastResponseText = rawText;
    this.checklist = [];
  }

  view(): PanelView {
    if (this.lastError) {
      return { method: this.method, status: "error", checklist: [],
               error: this.lastError };
    }
    if (this.checklist.length > 0) {
      return { method: this.method, status: "missing-context",
               checklist: [...this.checklist] };
    }
    if (this.lastEntry === null) {
      return { method: this.method, status: "empty", checklist: [] };
    }
    if (isFailure(this.lastEntry)) {
      return {
        method: this.method,
        status: "missing-context",
        checklist: [...this.lastEntry.missing_fields],
        error: this.lastEntry.error,
      };
    }
    const entry: AssessmentEntry = this.lastEntry;
    return {
      method: this.method,
      status: "scored",
      grand: entry.grand_score,
      level: entry.level,
      levelLabel: entry.level_label,
      subscores: entry.subscores,
      checklist: [],
    };
  }
}

function extractChecklist(detail: unknown, method: string): string[] {
  if (detail && typeof detail === "object" && "fields" in detail) {
    const fields = (detail as { fields: Record<string, string[]> }).fields;
    return fields[method] ?? [];
  }
  return [];
}
