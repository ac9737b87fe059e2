// Drag loop: pointer positions become throttled step requests; one request in
// flight at a time (request-per-frame), the latest goal coalesces while
// waiting, stale responses are dropped by sequence number, and the posture
// persists server-side on release (no extra call needed).

import type { ServiceClient } from "./client";
import { ServiceError } from "./client";
import { RateLimiter, SequenceGuard } from "./sequence";
import type { StepResponse, Vec3 } from "./types";

export interface DragCallbacks {
  onApplied(resp: StepResponse): void;
  onDisconnected(reason: string): void;
}

export interface DragOptions {
  dt?: number;
  maxRequestsPerSecond?: number;
  now?: () => number;
}

export class DragController {
  private readonly guard = new SequenceGuard();
  private readonly limiter: RateLimiter;
  private readonly dt: number;
  private readonly now: () => number;
  private activeFrame: string | null = null;
  private inflight = false;
  private pendingGoal: Vec3 | null = null;
  private disconnected = false;
  requestsSent = 0;
  responsesApplied = 0;

  constructor(
    private readonly client: ServiceClient,
    private readonly sessionId: string,
    private readonly callbacks: DragCallbacks,
    options: DragOptions = {},
  ) {
    this.dt = options.dt ?? 0.02;
    this.limiter = new RateLimiter(options.maxRequestsPerSecond ?? 60);
    this.now = options.now ?? (() => performance.now());
  }

  get active(): string | null {
    return this.activeFrame;
  }

  /** Start dragging a target attached to a segment; one drag at a time. */
  begin(frame: string): boolean {
    if (this.activeFrame !== null || this.disconnected) {
      return false;
    }
    this.activeFrame = frame;
    return true;
  }

  /** New pointer goal (world meters). Resolves once the wire settles. */
  async pointer(goal: Vec3): Promise<void> {
    if (this.activeFrame === null || this.disconnected) {
      return;
    }
    this.pendingGoal = goal;
    if (this.inflight) {
      return;
    }
    await this.drain();
  }

  /** Release: server already holds the posture; just clear drag state. */
  end(): void {
    this.activeFrame = null;
    this.pendingGoal = null;
  }

  private async drain(): Promise<void> {
    while (
      this.pendingGoal !== null &&
      this.activeFrame !== null &&
      !this.disconnected
    ) {
      if (!this.limiter.tryAcquire(this.now())) {
        return; // over budget: keep the goal pending for the next pointer event
      }
      const goal = this.pendingGoal;
      this.pendingGoal = null;
      this.inflight = true;
      try {
        this.requestsSent += 1;
        const resp = await this.client.stepIk(
          this.sessionId,
          { frame: this.activeFrame, goal },
          this.dt,
        );
        if (this.guard.accept(resp.seq)) {
          this.responsesApplied += 1;
          this.callbacks.onApplied(resp);
        }
      } catch (err) {
        this.disconnected = true;
        this.end();
        const reason = err instanceof ServiceError ? err.message : String(err);
        this.callbacks.onDisconnected(reason);
        return;
      } finally {
        this.inflight = false;
      }
    }
  }

  /** After reconnecting (new session or service back up). */
  reset(): void {
    this.disconnected = false;
    this.guard.reset();
    this.end();
  }
}
