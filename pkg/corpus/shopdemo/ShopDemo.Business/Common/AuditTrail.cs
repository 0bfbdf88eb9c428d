using System;
using Vendor.Json;

namespace ShopDemo.Business.Common
{
    public class AuditTrail
    {
        public void Record(string note)
        {
            JsonConvert.Serialize(note);
        }

        public AuditTrail Log(string note)
        {
            Record(note);
            return this;
        }

        public void Flush()
        {
        }
    }
}
