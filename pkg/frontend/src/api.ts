// Typed client for the groupmask session service JSON API.
// All mutations quote a revision; the service answers 409 when it is stale.

export interface Extremum {
  index: number; // 1-based signal position
  value: number;
}

export interface Evaluation {
  delta_tilde: number[];
  c1_tilde: number[];
  c2_tilde: number[];
  feasible: boolean;
  violations: number[]; // 1-based indices outside [0, 1]
}

export interface SessionState extends Evaluation {
  revision: number;
  basis: string;
  level: number;
  a_k: number[];
  delta: number[];
  approx: number[];
  details_sum: number[];
  extremums: Extremum[];
  labels: string[];
  alpha: number;
  a_tilde: number[];
}

export interface CoefficientsReply extends Evaluation {
  revision: number;
}

export interface CommitReply {
  revision: number;
  outputs: Record<string, string>;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** The service rejected a mutation based on an outdated revision. */
export class StaleRevisionError extends ApiError {
  constructor(readonly currentRevision: number) {
    super(409, `stale revision; service is at revision ${currentRevision}`);
  }
}

async function parse(response: Response): Promise<any> {
  const body = await response.json().catch(() => ({}));
  if (response.status === 409) {
    throw new StaleRevisionError(body.revision ?? -1);
  }
  if (!response.ok) {
    throw new ApiError(response.status, body.error ?? response.statusText);
  }
  return body;
}

export class Client {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: typeof fetch = (...args) => fetch(...args),
  ) {}

  async state(): Promise<SessionState> {
    return parse(await this.fetchImpl(`${this.baseUrl}/api/state`));
  }

  async setCoefficients(
    revision: number,
    aTilde: number[],
    alpha?: number,
  ): Promise<CoefficientsReply> {
    const payload: Record<string, unknown> = { revision, a_tilde: aTilde };
    if (alpha !== undefined) payload.alpha = alpha;
    return parse(
      await this.fetchImpl(`${this.baseUrl}/api/coefficients`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );
  }

  async commit(revision: number): Promise<CommitReply> {
    return parse(
      await this.fetchImpl(`${this.baseUrl}/api/commit`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ revision }),
      }),
    );
  }
}
