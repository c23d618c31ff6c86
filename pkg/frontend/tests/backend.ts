/** Where the integration tests expect the live primary-component backend. */
export const BACKEND_PORT = 8573;
export const BACKEND_URL = `http://127.0.0.1:${BACKEND_PORT}`;
