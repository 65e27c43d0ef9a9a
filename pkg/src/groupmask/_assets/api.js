// Typed client for the groupmask session service JSON API.
// All mutations quote a revision; the service answers 409 when it is stale.
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
/** The service rejected a mutation based on an outdated revision. */
export class StaleRevisionError extends ApiError {
    constructor(currentRevision) {
        super(409, `stale revision; service is at revision ${currentRevision}`);
        this.currentRevision = currentRevision;
    }
}
async function parse(response) {
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
    constructor(baseUrl = "", fetchImpl = (...args) => fetch(...args)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async state() {
        return parse(await this.fetchImpl(`${this.baseUrl}/api/state`));
    }
    async setCoefficients(revision, aTilde, alpha) {
        const payload = { revision, a_tilde: aTilde };
        if (alpha !== undefined)
            payload.alpha = alpha;
        return parse(await this.fetchImpl(`${this.baseUrl}/api/coefficients`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(payload),
        }));
    }
    async commit(revision) {
        return parse(await this.fetchImpl(`${this.baseUrl}/api/commit`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ revision }),
        }));
    }
}
