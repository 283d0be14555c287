/** Typed client for the rostering service REST API.
 *
 * All scheduling logic stays server-side; this module only moves
 * documents, job states, schedule CSVs, and verification reports.
 */

export interface PoolSummary {
  id: string;
  nurses: number;
}

export interface AvailabilityCell {
  nurse_id: string;
  block: number; // 1-based
  shift: number; // 1-based
  score: number; // 0 unavailable .. 3 most preferred
}

export interface GenerateRequest {
  pool_id?: string | null;
  mode?: "approximate" | "exact";
  time_limit_per_stage?: number | null;
  iteration_limit?: number;
}

export type JobState = "queued" | "running" | "done" | "failed" | "timed_out";

export interface JobStatus {
  id: string;
  pool_id: string;
  mode: string;
  state: JobState;
  error: string | null;
  verdict: string | null;
}

export interface NurseSummaryRow {
  nurse: number;
  block: number;
  assigned: number;
  minimum: number;
  delta: number;
}

export interface VerificationReport {
  verdict: string;
  assigned_total: number;
  unfilled_total: number;
  general_rule_failures: Array<{
    rule: string;
    nurse: number | null;
    shift: number | null;
    block: number | null;
    detail: string;
  }>;
  armstrong_violations: Array<{
    rule: string;
    block: number;
    senior: number;
    junior: number;
    deficient: number;
    justified: boolean;
    justification: Record<string, string>;
  }>;
  per_nurse_summary: NurseSummaryRow[];
  [key: string]: unknown;
}

export interface ValidationDetail {
  code?: string;
  location?: string;
  message?: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string | ValidationDetail,
  ) {
    super(typeof detail === "string" ? detail : (detail.message ?? JSON.stringify(detail)));
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly token: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init: RequestInit = {}): Promise<Response> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      ...init,
      headers: {
        authorization: `Bearer ${this.token}`,
        "content-type": "application/json",
        ...(init.headers ?? {}),
      },
    });
    if (!res.ok) {
      let detail: string | ValidationDetail = res.statusText;
      try {
        const body = (await res.json()) as { detail?: string | ValidationDetail };
        if (body.detail !== undefined) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(res.status, detail);
    }
    return res;
  }

  private async json<T>(path: string, init: RequestInit = {}): Promise<T> {
    return (await this.request(path, init)).json() as Promise<T>;
  }

  listPools(): Promise<PoolSummary[]> {
    return this.json("/pools");
  }

  createPool(id: string, document: object): Promise<{ id: string }> {
    return this.json("/pools", { method: "POST", body: JSON.stringify({ id, document }) });
  }

  getPool(id: string): Promise<Record<string, unknown>> {
    return this.json(`/pools/${id}`);
  }

  replacePool(id: string, document: object): Promise<{ id: string }> {
    return this.json(`/pools/${id}`, { method: "PUT", body: JSON.stringify({ document }) });
  }

  putEmployees(id: string, nurses: object[]): Promise<{ id: string; nurses: number }> {
    return this.json(`/pools/${id}/employees`, {
      method: "PUT",
      body: JSON.stringify({ nurses }),
    });
  }

  putAvailability(id: string, cells: AvailabilityCell[]): Promise<{ updated: number }> {
    return this.json(`/pools/${id}/availability`, {
      method: "PUT",
      body: JSON.stringify(cells),
    });
  }

  generate(req: GenerateRequest): Promise<{ jobs: string[] }> {
    return this.json("/generate", { method: "POST", body: JSON.stringify(req) });
  }

  jobStatus(jobId: string): Promise<JobStatus> {
    return this.json(`/jobs/${jobId}`);
  }

  /** Poll until the job leaves queued/running, or the deadline passes. */
  async waitForJob(jobId: string, timeoutMs = 120_000, pollMs = 250): Promise<JobStatus> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const status = await this.jobStatus(jobId);
      if (status.state !== "queued" && status.state !== "running") return status;
      if (Date.now() > deadline) throw new Error(`job ${jobId} still ${status.state} after ${timeoutMs}ms`);
      await new Promise((r) => setTimeout(r, pollMs));
    }
  }

  async jobSchedule(jobId: string): Promise<string> {
    return (await this.request(`/jobs/${jobId}/schedule`)).text();
  }

  jobReport(jobId: string): Promise<VerificationReport> {
    return this.json(`/jobs/${jobId}/report`);
  }

  async jobSwaps(jobId: string): Promise<string> {
    return (await this.request(`/jobs/${jobId}/swaps`)).text();
  }

  verify(poolId: string, scheduleCsv: string): Promise<VerificationReport> {
    return this.json(`/pools/${poolId}/verify`, {
      method: "POST",
      body: JSON.stringify({ schedule_csv: scheduleCsv }),
    });
  }
}
